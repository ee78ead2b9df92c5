#include "pacorr/bounds.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"
#include "pacorr/oracles.hpp"

namespace pacorr {

namespace {

constexpr long double kE = std::numbers::e_v<long double>;
constexpr long double kPi = std::numbers::pi_v<long double>;

void require_m(std::size_t m, std::size_t min, const char* who) {
    if (m < min) throw InvalidArgument(std::string(who) + ": m must be >= " + std::to_string(min));
}

long double ln(std::size_t m) { return logl(static_cast<long double>(m)); }

}  // namespace

long double lambda_m(std::size_t m) {
    require_m(m, 2, "lambda_m");
    return sqrtl(2.0L * static_cast<long double>(m) * ln(m));
}

long double normal_cdf_neg(long double z) { return 0.5L * erfcl(z / std::numbers::sqrt2_v<long double>); }

long double mills_upper(long double z) {
    if (z <= 0) throw InvalidArgument("mills_upper: z must be positive");
    return expl(-z * z / 2) / (sqrtl(2 * kPi) * z);
}

long double mills_lower(long double z) { return (1 - 1 / (z * z)) * mills_upper(z); }

long double union_bound_exceed(std::size_t m, long double eps, bool cardinality_factor) {
    require_m(m, 3, "union_bound_exceed");
    if (eps < 0) throw InvalidArgument("union_bound_exceed: epsilon must be >= 0");
    const long double mu = (1 + eps) * lambda_m(m);
    const long double v = 2 * expl(-(mu - 1) * (mu - 1) / (2.0L * static_cast<long double>(m) - 2));
    return cardinality_factor ? v * static_cast<long double>(m - 1) : v;
}

long double single_shift_tail_lower(std::size_t m) {
    require_m(m, 3, "single_shift_tail_lower");
    return 1 / (2 * static_cast<long double>(m) * sqrtl(ln(m)));
}

long double single_shift_tail_asymptotic(std::size_t m) {
    require_m(m, 3, "single_shift_tail_asymptotic");
    return 1 / (static_cast<long double>(m) * sqrtl(kPi * ln(m)));
}

long double pair_bound(std::size_t m) {
    require_m(m, 3, "pair_bound");
    const auto mm = static_cast<long double>(m);
    return 6 * kE * kE / (mm * mm);
}

bool pair_premise(std::size_t m, std::size_t u, std::size_t v) {
    if (m < 3 || u == 0 || v == 0 || u >= m || v >= m || u == v) return false;
    return static_cast<long double>(u + v) < static_cast<long double>(m) / (2 * ln(m));
}

long double pair_stirling_lhs(std::size_t m) {
    require_m(m, 3, "pair_stirling_lhs");
    const long double L = ln(m);
    const long double p = floorl(L);
    // ln (2p-1)!! = ln (2p)! - ln p! - p ln 2
    const long double ldf = lgammal(2 * p + 1) - lgammal(p + 1) - p * logl(2.0L);
    return expl(2 * ldf - 2 * p * logl(2.0L) - 2 * p * logl(L));
}

long double pair_stirling_rhs(std::size_t m) { return pair_bound(m) / 2; }

long double mcdiarmid_truncated(std::size_t m, long double theta) {
    require_m(m, 3, "mcdiarmid_truncated");
    if (theta <= 0) throw InvalidArgument("mcdiarmid_truncated: theta must be positive");
    return 2 * expl(-theta * theta / (8.0L * static_cast<long double>(m - 1)));
}

long double mcdiarmid_full(std::size_t m, long double theta_prime) {
    require_m(m, 3, "mcdiarmid_full");
    if (!(theta_prime > 4)) throw InvalidArgument("mcdiarmid_full: theta' must exceed 4");
    const long double t = theta_prime - 4;
    return 2 * expl(-t * t / (8.0L * static_cast<long double>(m - 1)));
}

long double bonferroni_lower(std::size_t m) {
    require_m(m, 3, "bonferroni_lower");
    return 1 / (15 * powl(ln(m), 1.5L));
}

Rational binomial_abs_tail_exact(std::uint64_t k, long double t) {
    if (k == 0) throw InvalidArgument("binomial_abs_tail_exact: k must be >= 1");
    if (k > kCramerMaxK) throw FeasibilityError("kCramerMaxK", "binomial_abs_tail_exact: k = " + std::to_string(k));
    BigInt c = 1, num = 0;
    for (std::uint64_t j = 0; j <= k; ++j) {
        const long double y = static_cast<long double>(k) - 2.0L * static_cast<long double>(j);
        if (fabsl(y) >= t) num += c;
        c = c * (k - j) / (j + 1);
    }
    BigInt den = 1;
    den <<= static_cast<unsigned>(k);
    return Rational(num, den);
}

long double binomial_abs_tail(std::uint64_t k, long double t) {
    if (k == 0) throw InvalidArgument("binomial_abs_tail: k must be >= 1");
    if (k > kCramerMaxK) throw FeasibilityError("kCramerMaxK", "binomial_abs_tail: k = " + std::to_string(k));
    if (t <= 0) return 1.0L;
    if (k <= kExactBinomialMaxK) return binomial_abs_tail_exact(k, t).convert_to<long double>();
    // Upper side: Y = k - 2j >= t  <=>  j <= (k - t) / 2. The lower side mirrors it.
    const long double jmax = floorl((static_cast<long double>(k) - t) / 2);
    if (jmax < 0) return 0.0L;
    const auto J = static_cast<std::uint64_t>(jmax);
    const auto kk = static_cast<long double>(k);
    const long double log_term =
        lgammal(kk + 1) - lgammal(static_cast<long double>(J) + 1) - lgammal(kk - static_cast<long double>(J) + 1) -
        kk * logl(2.0L);
    // Terms relative to the boundary term, Kahan-summed.
    long double rel = 1, sum = 0, comp = 0;
    for (std::uint64_t j = J;; --j) {
        const long double y = rel - comp;
        const long double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (j == 0 || rel < sum * 1e-30L) break;
        rel *= static_cast<long double>(j) / (kk - static_cast<long double>(j) + 1);
    }
    return 2 * expl(log_term) * sum;
}

long double cramer_ratio(std::uint64_t k, long double theta) {
    if (!(theta > 1)) throw InvalidArgument("cramer_ratio: theta must exceed 1");
    return binomial_abs_tail(k, theta * sqrtl(static_cast<long double>(k))) / (2 * normal_cdf_neg(theta));
}

std::optional<std::uint64_t> OnsetScan::last_violation() const {
    if (violations.empty()) return std::nullopt;
    return violations.back().m;
}

OnsetScan scan_single_shift_onset(std::uint64_t lo, std::uint64_t hi, int workers) {
    if (lo < 3 || hi < lo) throw InvalidArgument("scan_single_shift_onset: need 3 <= lo <= hi");
    const auto primes = primes_in_range(lo, hi);
    std::vector<long double> tails(primes.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_workers(workers))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i) {
        const auto m = static_cast<std::size_t>(primes[static_cast<std::size_t>(i)]);
        tails[static_cast<std::size_t>(i)] = cu_abs_tail(m, static_cast<double>(lambda_m(m)));
    }
    OnsetScan s;
    s.lo = lo;
    s.hi = hi;
    s.primes_checked = primes.size();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const auto m = static_cast<std::size_t>(primes[i]);
        const long double bound = single_shift_tail_lower(m);
        if (tails[i] < bound) s.violations.push_back({primes[i], tails[i], bound});
    }
    if (s.violations.empty()) {
        if (!primes.empty()) s.onset = primes.front();
    } else {
        for (auto p : primes) {
            if (p > s.violations.back().m) {
                s.onset = p;
                break;
            }
        }
    }
    return s;
}

nlohmann::ordered_json to_json(const OnsetScan& s) {
    nlohmann::ordered_json j;
    j["lo"] = s.lo;
    j["hi"] = s.hi;
    j["primes_checked"] = s.primes_checked;
    j["violation_count"] = s.violations.size();
    j["last_violation"] = s.last_violation() ? nlohmann::ordered_json(*s.last_violation()) : nlohmann::ordered_json();
    j["onset"] = s.onset ? nlohmann::ordered_json(*s.onset) : nlohmann::ordered_json();
    auto v = nlohmann::ordered_json::array();
    for (const auto& x : s.violations) {
        v.push_back({{"m", x.m},
                     {"tail", fmt12(static_cast<double>(x.tail))},
                     {"bound", fmt12(static_cast<double>(x.bound))}});
    }
    j["violations"] = v;
    return j;
}

std::vector<BoundValue> bound_table(std::size_t m, long double eps, std::optional<long double> theta, std::size_t u,
                                    std::size_t v) {
    require_m(m, 3, "bound_table");
    std::vector<BoundValue> out;
    auto add = [&](std::string name, nlohmann::ordered_json params, long double value, bool premise = true) {
        out.push_back(BoundValue{std::move(name), m, std::move(params), value, premise});
    };
    add("lambda", nlohmann::ordered_json::object(), lambda_m(m));
    add("union_bound_exceed", {{"epsilon", static_cast<double>(eps)}, {"cardinality_factor", 1}},
        union_bound_exceed(m, eps, true));
    add("union_bound_exceed", {{"epsilon", static_cast<double>(eps)}, {"cardinality_factor", 0}},
        union_bound_exceed(m, eps, false));
    add("single_shift_tail_lower", nlohmann::ordered_json::object(), single_shift_tail_lower(m));
    add("pair_bound", {{"u", u}, {"v", v}}, pair_bound(m), pair_premise(m, u, v));
    add("pair_stirling_lhs", {{"p", static_cast<unsigned>(floorl(ln(m)))}}, pair_stirling_lhs(m));
    add("pair_stirling_rhs", nlohmann::ordered_json::object(), pair_stirling_rhs(m));
    add("bonferroni_lower", nlohmann::ordered_json::object(), bonferroni_lower(m));
    if (theta) {
        add("mcdiarmid_truncated", {{"theta", static_cast<double>(*theta)}}, mcdiarmid_truncated(m, *theta));
        // theta' <= 4 has no bound; the trivial probability bound 1 is reported with the premise flagged.
        if (*theta > 4) {
            add("mcdiarmid_full", {{"theta", static_cast<double>(*theta)}}, mcdiarmid_full(m, *theta));
        } else {
            add("mcdiarmid_full", {{"theta", static_cast<double>(*theta)}}, 1.0L, false);
        }
    }
    return out;
}

std::string params_cell(const nlohmann::ordered_json& params) {
    std::string s;
    for (const auto& [k, v] : params.items()) {
        if (!s.empty()) s += ';';
        s += k;
        s += '=';
        s += v.is_number_float() ? fmt12(v.get<double>()) : v.dump();
    }
    return s;
}

}  // namespace pacorr
