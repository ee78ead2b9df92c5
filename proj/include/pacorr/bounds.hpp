#pragma once

// Closed-form probability bounds and the Gaussian / binomial tail machinery
// they are compared against. log is the natural logarithm throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pacorr/report.hpp"

namespace pacorr {

struct BoundValue {
    std::string name;
    std::size_t m = 0;
    /// Auxiliary parameters (epsilon, theta, u, v, ...), in insertion order.
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    long double value = 0;
    bool premise_met = true;
};

/// sqrt(2 m ln m), m >= 2.
long double lambda_m(std::size_t m);

/// Phi(-z) = P(N(0,1) <= -z) via erfc; relative error below 1e-15 for |z| <= 37.
long double normal_cdf_neg(long double z);

/// The two sides of (1 - 1/z^2) e^{-z^2/2} / (sqrt(2 pi) z) <= Phi(-z) <= e^{-z^2/2} / (sqrt(2 pi) z), z > 0.
long double mills_lower(long double z);
long double mills_upper(long double z);

/// 2 exp(-(mu - 1)^2 / (2m - 2)) with mu = (1 + eps) sqrt(2 m ln m); times
/// (m - 1) when cardinality_factor is set. m >= 3, eps >= 0.
long double union_bound_exceed(std::size_t m, long double eps, bool cardinality_factor = true);

/// 1 / (2 m sqrt(ln m)), m >= 3.
long double single_shift_tail_lower(std::size_t m);

/// 1 / (m sqrt(pi ln m)), the asymptotic size of P(|C_u| >= lambda_m).
long double single_shift_tail_asymptotic(std::size_t m);

/// 6 e^2 / m^2, m >= 3.
long double pair_bound(std::size_t m);

/// u, v distinct in F_m^* and u + v < m / (2 ln m).
bool pair_premise(std::size_t m, std::size_t u, std::size_t v);

/// (2p-1)!!^2 / (2^{2p} (ln m)^{2p}) with p = floor(ln m), evaluated in log space.
long double pair_stirling_lhs(std::size_t m);
/// 3 e^2 / m^2.
long double pair_stirling_rhs(std::size_t m);

/// 2 exp(-theta^2 / (8 (m - 1))), theta > 0.
long double mcdiarmid_truncated(std::size_t m, long double theta);

/// 2 exp(-(theta' - 4)^2 / (8 (m - 1))); throws InvalidArgument for theta' <= 4.
long double mcdiarmid_full(std::size_t m, long double theta_prime);

/// 1 / (15 (ln m)^{3/2}), m >= 3.
long double bonferroni_lower(std::size_t m);

/// Largest k for which binomial tails are summed as exact rationals.
inline constexpr std::uint64_t kExactBinomialMaxK = 64;
inline constexpr std::uint64_t kCramerMaxK = 1'000'000;

/// P(|Y_k| >= t) for Y_k a sum of k independent uniform +-1 variables, exact.
Rational binomial_abs_tail_exact(std::uint64_t k, long double t);

/// Same probability in long double: exact rationals for k <= kExactBinomialMaxK,
/// otherwise log-gamma for the boundary term and a ratio recurrence outward
/// with compensated summation.
long double binomial_abs_tail(std::uint64_t k, long double t);

/// P(|Y_k| >= theta sqrt(k)) / (2 Phi(-theta)); 1 <= k <= kCramerMaxK, theta > 1.
long double cramer_ratio(std::uint64_t k, long double theta);

/// Single-shift tail P(|C_u| >= lambda_m) against 1/(2 m sqrt(ln m)) over the
/// primes of [lo, hi].
struct OnsetScan {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t primes_checked = 0;
    struct Violation {
        std::uint64_t m;
        long double tail;
        long double bound;
    };
    std::vector<Violation> violations;
    /// Smallest prime m0 in [lo, hi] with the bound holding at every prime in [m0, hi].
    std::optional<std::uint64_t> onset;

    std::optional<std::uint64_t> last_violation() const;
};

OnsetScan scan_single_shift_onset(std::uint64_t lo, std::uint64_t hi, int workers = 0);

nlohmann::ordered_json to_json(const OnsetScan& s);

/// The CLI's bound table for one m: every evaluator at the given auxiliary
/// parameters. u, v default to 1, 2 for the pair premise.
std::vector<BoundValue> bound_table(std::size_t m, long double eps, std::optional<long double> theta,
                                    std::size_t u = 1, std::size_t v = 2);

/// "k=v;k=v" rendering of params for the single CSV params column.
std::string params_cell(const nlohmann::ordered_json& params);

}  // namespace pacorr
