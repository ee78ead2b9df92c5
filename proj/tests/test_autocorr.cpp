#include <doctest.h>

#include <cstdlib>

#include "oracle_helpers.hpp"
#include "pacorr/autocorr.hpp"
#include "pacorr/errors.hpp"

using namespace pacorr;
namespace to = testing_oracle;

namespace {
BinarySequence random_seq(std::size_t m, std::uint64_t seed) {
    RngStream s(seed, m);
    return sample_uniform(m, s);
}
}  // namespace

TEST_CASE("hand-computed values") {
    const auto s = BinarySequence::parse("+-+");
    CHECK(periodic_autocorrelation(s, 1) == -1);
    CHECK(aperiodic_autocorrelation(s, 2) == 1);
    CHECK(periodic_autocorrelation(constant_sequence(7, 1), 3) == 7);
    CHECK(periodic_autocorrelation(constant_sequence(5, 1), 2) == 5);
    CHECK_THROWS_AS(periodic_autocorrelation(s, 3), InvalidArgument);
}

TEST_CASE("constant spectrum") {
    const auto spec = full_spectrum(constant_sequence(5, 1));
    CHECK(spec.values == std::vector<std::int64_t>{5, 5, 5, 5, 5});
    CHECK(spec.max_nontrivial == 5);
    CHECK(truncated_max(constant_sequence(5, 1)) == 3);
}

TEST_CASE("single shift matches the direct sum") {
    const auto s = random_seq(101, 1);
    const auto v = s.to_signs();
    for (std::size_t u = 0; u < 101; ++u) {
        CHECK(periodic_autocorrelation(s, u) == to::periodic(v, u));
        CHECK(reference::periodic_autocorrelation(s, u) == to::periodic(v, u));
    }
}

TEST_CASE("bit-sliced spectrum matches the naive oracle across word boundaries") {
    for (std::size_t m : {2u, 3u, 63u, 64u, 65u, 127u, 128u, 129u, 191u, 500u, 2003u}) {
        const auto s = random_seq(m, 7);
        const auto v = s.to_signs();
        const auto fast = full_spectrum(s, Exec::serial);
        const auto par = full_spectrum(s, Exec::parallel);
        const auto unfolded = unfolded_spectrum(s);
        for (std::size_t u = 0; u < m; ++u) REQUIRE(fast.values[u] == to::periodic(v, u));
        CHECK(par.values == fast.values);
        CHECK(unfolded == fast.values);
        CHECK(fast.max_nontrivial == to::max_nontrivial(v));
        CHECK(reference::full_spectrum(s).values == fast.values);
    }
}

TEST_CASE("parallel kernel above the fork threshold") {
    const auto s = random_seq(kParallelSpectrumMinLength + 3, 5);
    CHECK(full_spectrum(s, Exec::parallel).values == reference::full_spectrum(s).values);
}

TEST_CASE("legendre spectrum") {
    // For m = 3 mod 4 every off-peak value of the Legendre sequence is -1.
    const auto spec = full_spectrum(legendre_sequence(7));
    const auto v = legendre_sequence(7).to_signs();
    for (std::size_t u = 1; u < 7; ++u) CHECK(spec.values[u] == to::periodic(v, u));
    CHECK(spec.max_nontrivial == to::max_nontrivial(v));
    CHECK(spec.max_nontrivial == 1);
}

TEST_CASE("periodic splits into two aperiodic sums") {
    const auto s = random_seq(31, 3);
    for (std::size_t u = 1; u < 31; ++u) {
        CHECK(periodic_autocorrelation(s, u) == aperiodic_autocorrelation(s, u) + aperiodic_autocorrelation(s, 31 - u));
    }
    CHECK(aperiodic_autocorrelation(s, 0) == 31);
}

TEST_CASE("truncated spectrum") {
    const auto s = BinarySequence::parse("+-+");
    const auto t = truncated_spectrum(s);
    for (std::size_t u = 1; u < 3; ++u) CHECK(t[u] == reference::truncated_autocorrelation(s, u));

    const auto r = random_seq(101, 9);
    const auto tr = truncated_spectrum(r);
    for (std::size_t u = 1; u < 101; ++u) CHECK(tr[u] == reference::truncated_autocorrelation(r, u));
    CHECK(std::llabs(full_spectrum(r).max_nontrivial - truncated_max(r)) <= 2);
    CHECK_THROWS_AS(truncated_spectrum(BinarySequence::parse("+-")), InvalidArgument);
}
