#include <doctest.h>

#include <cmath>

#include "pacorr/bounds.hpp"
#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"

using namespace pacorr;

TEST_CASE("lambda") {
    CHECK(static_cast<double>(lambda_m(8)) == doctest::Approx(5.7681075464035320682).epsilon(1e-13));
    CHECK(static_cast<double>(lambda_m(2)) == doctest::Approx(std::sqrt(4 * std::log(2.0))).epsilon(1e-15));
    for (std::size_t m = 2; m < 2000; ++m) CHECK(lambda_m(m + 1) > lambda_m(m));
}

TEST_CASE("gaussian tail") {
    CHECK(normal_cdf_neg(0) == doctest::Approx(0.5));
    CHECK(static_cast<double>(normal_cdf_neg(2)) == doctest::Approx(0.022750131948179207200).epsilon(1e-14));
    CHECK(mills_lower(2) <= normal_cdf_neg(2));
    CHECK(normal_cdf_neg(2) <= mills_upper(2));
    CHECK(normal_cdf_neg(2) >= 0.02025L);
    CHECK(normal_cdf_neg(2) <= 0.02700L);
    CHECK(static_cast<double>(mills_lower(2)) == doctest::Approx(0.020246612442445522).epsilon(1e-12));
    CHECK(static_cast<double>(mills_upper(2)) == doctest::Approx(0.02699548325659403).epsilon(1e-12));
}

TEST_CASE("union bound") {
    long double prev = 2;
    for (std::size_t m : {1000u, 10000u, 100000u, 1000000u}) {
        const long double v = union_bound_exceed(m, 0.1L);
        CHECK(v < prev);
        prev = v;
    }
    for (std::size_t m = 3; m < 3000; m += 7) CHECK(union_bound_exceed(m, 0.1L, true) >= union_bound_exceed(m, 0.1L, false));
    const long double z = union_bound_exceed(101, 0, false);
    CHECK(z > 0);
    CHECK(std::isfinite(static_cast<double>(z)));
}

TEST_CASE("single-shift tail bound") {
    const long double v = single_shift_tail_lower(10007);
    CHECK(v > 0);
    CHECK(v < 1);
    CHECK(single_shift_tail_asymptotic(10007) > v);
}

TEST_CASE("pair bound") {
    CHECK(static_cast<double>(pair_bound(1009)) == doctest::Approx(4.354696393860989583e-05).epsilon(1e-12));
    for (std::size_t u = 1; u < 7; ++u) {
        for (std::size_t v = 1; v < 7; ++v) CHECK_FALSE(pair_premise(7, u, v));
    }
    CHECK(pair_premise(1009, 1, 2));
    for (std::size_t m = 1000; m <= 1000000; m += 997) CHECK(pair_stirling_lhs(m) <= pair_stirling_rhs(m));
}

TEST_CASE("bounded-differences bounds") {
    const std::size_t m = 499;
    const long double theta = 4 + sqrtl(8.0L * (m - 1));
    CHECK(static_cast<double>(mcdiarmid_full(m, theta)) == doctest::Approx(2 / std::exp(1.0)).epsilon(1e-14));
    for (long double t : {10.0L, 50.0L, 200.0L}) CHECK(mcdiarmid_full(m, t) >= mcdiarmid_truncated(m, t));
    CHECK_THROWS_AS(mcdiarmid_full(m, 4), InvalidArgument);
}

TEST_CASE("bonferroni lower bound") {
    CHECK(static_cast<double>(bonferroni_lower(1009)) == doctest::Approx(0.003664872897157506067).epsilon(1e-12));
    for (std::size_t m = 3; m < 5000; ++m) CHECK(bonferroni_lower(m + 1) < bonferroni_lower(m));
}

TEST_CASE("binomial tails") {
    // Independent big-integer sum: 72114023225732984196677525200 / 2^100.
    const Rational want(BigInt("72114023225732984196677525200"), BigInt(1) << 100);
    CHECK(binomial_abs_tail_exact(100, 20) == want);
    CHECK(static_cast<double>(binomial_abs_tail(100, 20)) == doctest::Approx(0.05688793364098079).epsilon(1e-12));
    // Floating path (k > kExactBinomialMaxK) against the exact sum.
    for (std::uint64_t k : {65u, 200u, 1000u}) {
        for (long double t : {3.0L, 20.5L, 40.0L}) {
            const double exact = binomial_abs_tail_exact(k, t).convert_to<double>();
            CHECK(static_cast<double>(binomial_abs_tail(k, t)) == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("cramer ratio") {
    auto at = [](std::uint64_t k) { return static_cast<double>(cramer_ratio(k, sqrtl(2 * logl(static_cast<long double>(k))))); };
    // Frozen from an independent exact / scipy evaluation.
    CHECK(at(1000) == doctest::Approx(1.05321751634358).epsilon(1e-10));
    CHECK(at(10000) == doctest::Approx(1.0059151663164).epsilon(1e-10));
    CHECK(at(100000) == doctest::Approx(1.0063223076713583).epsilon(1e-9));
    CHECK(std::abs(at(100000) - 1) < std::abs(at(1000) - 1));
    // Not monotone: the lattice makes 1e5 slightly worse than 1e4.
    CHECK(std::abs(at(100000) - 1) > std::abs(at(10000) - 1));
    CHECK_THROWS_AS(cramer_ratio(kCramerMaxK + 1, 2), FeasibilityError);
}

TEST_CASE("single-shift onset scan") {
    const auto s = scan_single_shift_onset(3, 100000);
    CHECK(s.primes_checked == 9591);
    REQUIRE(s.last_violation().has_value());
    CHECK(*s.last_violation() == 4153);
    REQUIRE(s.onset.has_value());
    CHECK(*s.onset == 4157);
    const auto clean = scan_single_shift_onset(4157, 20000);
    CHECK(clean.violations.empty());
    CHECK(*clean.onset == 4157);
}

TEST_CASE("bound table") {
    const auto t = bound_table(1009, 0.1L, 3.0L);
    REQUIRE(t.size() == 10);
    CHECK(t.back().name == "mcdiarmid_full");
    CHECK_FALSE(t.back().premise_met);
    CHECK(params_cell(t[1].params) == "epsilon=0.1;cardinality_factor=1");
    CHECK(bound_table(1009, 0.1L, std::nullopt).size() == 8);
}
