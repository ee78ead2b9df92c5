#pragma once

// Even and xi-even sequences over F_m.
//
// A sequence over F_m is even when every value occurs an even number of
// times. Given xi = (a_1, ..., a_n), a tuple x = (x_1, ..., x_n) is xi-even
// when (x_1, x_1 + a_1, ..., x_n, x_n + a_n) is even; E(xi) counts them.
// E(xi) is the moment E[prod_i C_{a_i}(S)] over uniform S, which ties this
// module to the exhaustive oracles.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pacorr {

/// Brute force over F_m^n is allowed while m^n stays below this.
inline constexpr std::uint64_t kBruteForceMaxTuples = 100'000'000;
/// The parity-vector DP keeps 2^m counters.
inline constexpr std::size_t kParityDpMaxModulus = 22;

struct XiSequence {
    std::size_t m = 0;
    std::vector<std::size_t> entries;

    std::size_t n() const noexcept { return entries.size(); }

    /// Validates 0 <= a_i < m and n >= 1.
    static XiSequence make(std::size_t m, std::vector<std::size_t> entries);

    friend auto operator<=>(const XiSequence&, const XiSequence&) = default;
};

/// Every value occurs an even number of times. Vacuously true when empty.
bool is_even(std::span<const std::size_t> seq);

/// Throws InvalidArgument if x.size() != xi.n().
bool is_xi_even(std::span<const std::size_t> x, const XiSequence& xi);

/// xi-even, and no non-empty proper subset J of indices has
/// (x_j, x_j + a_j)_{j in J} even.
bool is_exactly_xi_even(std::span<const std::size_t> x, const XiSequence& xi);

/// E(xi) by walking all of F_m^n. Throws FeasibilityError above kBruteForceMaxTuples.
std::uint64_t count_xi_even_bruteforce(const XiSequence& xi, int workers = 0);

/// E(xi) by a DP over the parity vector of value occurrences (2^m states,
/// n*m*2^m work). Throws FeasibilityError above kParityDpMaxModulus.
std::uint64_t count_xi_even_parity_dp(const XiSequence& xi);

/// E(xi) via whichever exact route is cheaper, memoised on canonicalize(xi).
std::uint64_t count_xi_even(const XiSequence& xi);

/// Sorted representative minimised over all scalings c in F_m^* when m is
/// prime; for composite m only the sort is applied.
XiSequence canonicalize(const XiSequence& xi);

/// J (1-based indices into xi) admits signs with sum_{j in J} +-a_j = 0 mod m.
bool is_xi_subset(std::span<const std::size_t> indices, const XiSequence& xi);

/// Same predicate with J given as a bit mask (bit j-1 for index j).
bool is_xi_subset_mask(std::uint64_t mask, const XiSequence& xi);

/// Entries of xi selected by a bit mask, in index order.
XiSequence restrict_to(const XiSequence& xi, std::uint64_t mask);

}  // namespace pacorr
