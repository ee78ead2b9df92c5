#include <doctest.h>

#include "oracle_helpers.hpp"
#include "pacorr/errors.hpp"
#include "pacorr/evenseq.hpp"
#include "pacorr/oracles.hpp"

using namespace pacorr;
namespace to = testing_oracle;

TEST_CASE("law of C_u at m = 3") {
    const auto law = exact_pmf_cu(3);
    CHECK(law.probability(3) == Rational(1, 4));
    CHECK(law.probability(-1) == Rational(3, 4));
    CHECK(law.total() == 1);
}

TEST_CASE("law of C_u matches enumeration for primes up to 13") {
    for (std::size_t m : {3u, 5u, 7u, 11u, 13u}) {
        const auto law = exact_pmf_cu(m);
        for (std::size_t u = 1; u < m; ++u) CHECK(enumerate_pmf_cu(m, u) == law);
    }
}

TEST_CASE("enumerated law of C_u against the test oracle") {
    const std::size_t m = 9, u = 3;
    std::map<long long, long long> counts;
    for (std::uint64_t mask = 0; mask < (1u << m); ++mask) ++counts[to::periodic(to::signs_of_mask(mask, m), u)];
    const auto law = enumerate_pmf_cu(m, u);
    for (const auto& [v, q] : law.support) CHECK(q == Rational(counts.at(v), 1 << m));
    CHECK(law.support.size() == counts.size());
}

TEST_CASE("tail of C_u") {
    const auto law = exact_pmf_cu(13);
    for (double t : {0.0, 1.0, 4.5, 7.0, 12.0, 13.0, 14.0}) {
        CHECK(cu_abs_tail_exact(13, t) == law.abs_tail(t));
        CHECK(cu_abs_tail(13, t) == doctest::Approx(law.abs_tail(t).convert_to<double>()).epsilon(1e-14));
    }
    // Frozen from an independent scipy evaluation of the binomial-parity law.
    CHECK(cu_abs_tail(1009, 118.143687562842) == doctest::Approx(0.00020020713822000834).epsilon(1e-10));
    CHECK(cu_abs_tail(10007, 429.35970596178254) == doctest::Approx(1.7147621205332566e-05).epsilon(1e-9));
}

TEST_CASE("law of the maximum") {
    const auto law = enumerate_pmf_max(3);
    CHECK(law.probability(3) == Rational(1, 4));
    CHECK(law.probability(1) == Rational(3, 4));
    CHECK(law.mean() == Rational(3, 2));

    std::map<long long, long long> counts;
    for (std::uint64_t mask = 0; mask < (1u << 8); ++mask) ++counts[to::max_nontrivial(to::signs_of_mask(mask, 8))];
    for (const auto& [v, q] : enumerate_pmf_max(8).support) CHECK(q == Rational(counts.at(v), 256));
}

TEST_CASE("independence of the X_{x,u}") {
    CHECK(verify_independence(7, 1).independent());
    CHECK(verify_independence(5, 2, {.max_exhaustive_size = 4}).independent());
    const auto bad = verify_independence(4, 2);
    CHECK_FALSE(bad.independent());
    REQUIRE_FALSE(bad.violations.empty());
    CHECK_THROWS_AS(verify_independence(7, 0), InvalidArgument);
}

TEST_CASE("joint moments equal the xi-even counts") {
    struct Case {
        std::size_t m, a, b;
        unsigned p;
    };
    for (auto c : {Case{5, 1, 2, 1}, Case{7, 2, 3, 1}, Case{5, 1, 2, 2}, Case{7, 1, 3, 1}}) {
        const auto jm = exact_joint_moment(c.m, c.a, c.b, c.p);
        std::vector<std::size_t> xi(2 * c.p, c.a);
        xi.insert(xi.end(), 2 * c.p, c.b);
        const auto e = to::xi_even_count(c.m, xi);
        CHECK(jm.expectation == Rational(e));
        CHECK(jm.sum == BigInt(e) << c.m);
    }
}

TEST_CASE("shift product moment against the test oracle") {
    const std::vector<std::size_t> shifts{1, 2, 3, 0};
    CHECK(exact_shift_product_moment(6, shifts) == Rational(to::shift_product_sum(6, shifts), 64));
}

TEST_CASE("event probabilities") {
    auto max_at_least = [](std::int64_t t) {
        return [t](std::span<const std::int64_t> c) {
            std::int64_t best = 0;
            for (std::size_t u = 1; u < c.size(); ++u) best = std::max<std::int64_t>(best, std::llabs(c[u]));
            return best >= t;
        };
    };
    CHECK(exact_event_probability(3, max_at_least(3)) == Rational(1, 4));
    CHECK(exact_event_probability(5, [](std::span<const std::int64_t> c) { return std::llabs(c[1]) >= 6; }) == 0);

    // Markov step at m = 7: P(|C_1| >= 3, |C_2| >= 3) <= E(1,1,2,2) / 81.
    const auto lhs =
        exact_event_probability(7, [](std::span<const std::int64_t> c) { return std::llabs(c[1]) >= 3 && std::llabs(c[2]) >= 3; });
    CHECK(lhs <= Rational(to::xi_even_count(7, {1, 1, 2, 2}), 81));
}

TEST_CASE("enumeration caps") {
    CHECK_THROWS_AS(enumerate_pmf_max(kExhaustiveMaxLength + 1), FeasibilityError);
    CHECK_NOTHROW(enumerate_pmf_cu(5, 1, 5));
}
