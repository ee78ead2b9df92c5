#pragma once

#include <stdexcept>
#include <string>

namespace pacorr {

/// Bad argument: invalid length, shift out of range, non-prime modulus, ...
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or evaluation exceeds a named cap constant.
class FeasibilityError : public std::runtime_error {
public:
    FeasibilityError(std::string cap_name, const std::string& what)
        : std::runtime_error(what + " (cap: " + cap_name + ")"), cap_(std::move(cap_name)) {}

    const std::string& cap() const noexcept { return cap_; }

private:
    std::string cap_;
};

}  // namespace pacorr
