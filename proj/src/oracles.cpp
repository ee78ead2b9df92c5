#include "pacorr/oracles.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"
#include "pacorr/sequence.hpp"

namespace pacorr {

namespace {

// Bit i of the result is bit (i + u) mod m of x.
inline std::uint64_t rotate_down(std::uint64_t x, std::size_t u, std::size_t m, std::uint64_t full) {
    if (u == 0) return x;
    return ((x >> u) | (x << (m - u))) & full;
}

inline std::int64_t cu_of_mask(std::uint64_t x, std::size_t u, std::size_t m, std::uint64_t full) {
    return static_cast<std::int64_t>(m) - 2 * std::popcount(x ^ rotate_down(x, u, m, full));
}

void check_exhaustive(std::size_t m, std::size_t cap, const char* who) {
    if (m < 2) throw InvalidArgument(std::string(who) + ": m must be >= 2");
    if (m > cap || m > 40) {
        throw FeasibilityError("kExhaustiveMaxLength", std::string(who) + ": 2^" + std::to_string(m) +
                                                           " sequences exceeds the enumeration cap of 2^" +
                                                           std::to_string(std::min<std::size_t>(cap, 40)));
    }
}

BigInt pow2(std::size_t e) { return BigInt(1) << e; }

ExactPmf pmf_from_histogram(const std::vector<std::uint64_t>& hist, std::int64_t offset, std::size_t m) {
    ExactPmf pmf;
    const BigInt den = pow2(m);
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] == 0) continue;
        pmf.support.emplace_back(static_cast<std::int64_t>(i) - offset, Rational(BigInt(hist[i]), den));
    }
    return pmf;
}

// Histogram of f(x) over x in [0, 2^m), f returning an index in [0, size).
template <class F>
std::vector<std::uint64_t> tally(std::size_t m, std::size_t size, int workers, F f) {
    std::vector<std::uint64_t> hist(size, 0);
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << m);
#pragma omp parallel num_threads(resolve_workers(workers))
    {
        std::vector<std::uint64_t> local(size, 0);
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < total; ++x) ++local[f(static_cast<std::uint64_t>(x))];
#pragma omp critical
        for (std::size_t i = 0; i < size; ++i) hist[i] += local[i];
    }
    return hist;
}

std::uint64_t compress_bits(std::uint64_t x, std::span<const unsigned> positions) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) out |= ((x >> positions[i]) & 1u) << i;
    return out;
}

}  // namespace

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

Rational ExactPmf::total() const {
    Rational t = 0;
    for (const auto& [v, p] : support) t += p;
    return t;
}

Rational ExactPmf::probability(std::int64_t value) const {
    auto it = std::lower_bound(support.begin(), support.end(), value,
                               [](const auto& e, std::int64_t v) { return e.first < v; });
    return (it != support.end() && it->first == value) ? it->second : Rational(0);
}

Rational ExactPmf::abs_tail(double threshold) const {
    Rational t = 0;
    for (const auto& [v, p] : support) {
        if (static_cast<double>(std::llabs(v)) >= threshold) t += p;
    }
    return t;
}

Rational ExactPmf::mean() const {
    Rational t = 0;
    for (const auto& [v, p] : support) t += p * v;
    return t;
}

ExactPmf exact_pmf_cu(std::size_t m) {
    if (m < 2 || !is_prime(m)) throw InvalidArgument("exact_pmf_cu: m must be prime");
    if (m > kExactPmfMaxModulus) {
        throw FeasibilityError("kExactPmfMaxModulus", "exact_pmf_cu: m = " + std::to_string(m) + " too large");
    }
    const std::size_t n = m - 1;
    std::map<std::int64_t, BigInt> mass;
    BigInt binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::int64_t value = static_cast<std::int64_t>(n) - 2 * static_cast<std::int64_t>(k) + (k % 2 == 0 ? 1 : -1);
        mass[value] += binom;
        binom = binom * (n - k) / (k + 1);
    }
    ExactPmf pmf;
    const BigInt den = pow2(n);
    for (const auto& [v, c] : mass) pmf.support.emplace_back(v, Rational(c, den));
    return pmf;
}

ExactPmf enumerate_pmf_cu(std::size_t m, std::size_t u, std::size_t cap, int workers) {
    check_exhaustive(m, cap, "enumerate_pmf_cu");
    if (u >= m) throw InvalidArgument("enumerate_pmf_cu: shift out of range");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const auto hist = tally(m, 2 * m + 1, workers, [&](std::uint64_t x) {
        return static_cast<std::size_t>(cu_of_mask(x, u, m, full) + static_cast<std::int64_t>(m));
    });
    return pmf_from_histogram(hist, static_cast<std::int64_t>(m), m);
}

ExactPmf enumerate_pmf_max(std::size_t m, std::size_t cap, int workers) {
    check_exhaustive(m, cap, "enumerate_pmf_max");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const auto hist = tally(m, m + 1, workers, [&](std::uint64_t x) {
        std::int64_t best = 0;
        for (std::size_t u = 1; u < m; ++u) best = std::max(best, std::abs(cu_of_mask(x, u, m, full)));
        return static_cast<std::size_t>(best);
    });
    return pmf_from_histogram(hist, 0, m);
}

long double cu_abs_tail(std::size_t m, double threshold) {
    if (m < 2 || !is_prime(m)) throw InvalidArgument("cu_abs_tail: m must be prime");
    if (threshold <= 0) return 1.0L;
    const auto n = static_cast<std::int64_t>(m - 1);
    auto value = [n](std::int64_t k) { return n - 2 * k + (k % 2 == 0 ? 1 : -1); };
    const long double log_norm = lgammal(static_cast<long double>(n) + 1) - static_cast<long double>(n) * logl(2.0L);
    auto term = [&](std::int64_t k) {
        return expl(log_norm - lgammal(static_cast<long double>(k) + 1) - lgammal(static_cast<long double>(n - k) + 1));
    };
    const long double t = threshold;

    long double total = 0;
    // value(k) is non-increasing in k, so each tail is a contiguous run of k.
    if (value(0) >= t) {
        std::int64_t lo = 0, hi = n;  // largest k with value(k) >= t
        while (lo < hi) {
            const std::int64_t mid = (lo + hi + 1) / 2;
            if (value(mid) >= t) lo = mid; else hi = mid - 1;
        }
        long double tk = term(lo), sum = 0;
        for (std::int64_t k = lo; k >= 0; --k) {
            sum += tk;
            if (tk < sum * 1e-30L) break;
            tk *= static_cast<long double>(k) / static_cast<long double>(n - k + 1);
        }
        total += sum;
    }
    if (value(n) <= -t) {
        std::int64_t lo = 0, hi = n;  // smallest k with value(k) <= -t
        while (lo < hi) {
            const std::int64_t mid = (lo + hi) / 2;
            if (value(mid) <= -t) hi = mid; else lo = mid + 1;
        }
        long double tk = term(lo), sum = 0;
        for (std::int64_t k = lo; k <= n; ++k) {
            sum += tk;
            if (tk < sum * 1e-30L) break;
            tk *= static_cast<long double>(n - k) / static_cast<long double>(k + 1);
        }
        total += sum;
    }
    return total;
}

Rational cu_abs_tail_exact(std::size_t m, double threshold) { return exact_pmf_cu(m).abs_tail(threshold); }

IndependenceReport verify_independence(std::size_t m, std::size_t u, const IndependencePlan& plan, std::size_t cap,
                                       int workers) {
    check_exhaustive(m, cap, "verify_independence");
    if (u == 0 || u >= m) throw InvalidArgument("verify_independence: u must lie in F_m^*");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const std::size_t nvars = m - 1;  // variables X_{x,u}, x = 1..m-1, at bit x-1
    const std::uint64_t var_mask = (std::uint64_t{1} << nvars) - 1;
    const std::size_t total = std::size_t{1} << m;

    // Bit x-1 of xm[S] is set iff X_{x,u}(S) = -1.
    std::vector<std::uint32_t> xm(total);
    for (std::size_t x = 0; x < total; ++x) {
        xm[x] = static_cast<std::uint32_t>(((x ^ rotate_down(x, u, m, full)) >> 1) & var_mask);
    }

    std::vector<std::uint64_t> subsets;
    for (std::uint64_t e = 1; e <= var_mask; ++e) {
        if (static_cast<std::size_t>(std::popcount(e)) <= plan.max_exhaustive_size) subsets.push_back(e);
    }
    if (plan.include_full_set && nvars > plan.max_exhaustive_size) subsets.push_back(var_mask);
    RngStream rng(plan.seed, 0);
    for (std::size_t i = 0; i < plan.random_subsets; ++i) {
        std::uint64_t e = 0;
        while (e == 0) e = rng.next_word() & var_mask;
        subsets.push_back(e);
    }

    struct Result {
        std::uint64_t patterns = 0;
        std::uint64_t bad = 0;
        std::vector<IndependenceViolation> found;
    };
    std::vector<Result> results(subsets.size());
    constexpr std::size_t kKeep = 16;

#pragma omp parallel for schedule(dynamic) num_threads(resolve_workers(workers))
    for (std::int64_t si = 0; si < static_cast<std::int64_t>(subsets.size()); ++si) {
        const std::uint64_t e = subsets[si];
        std::vector<unsigned> pos;
        for (unsigned b = 0; b < nvars; ++b) {
            if ((e >> b) & 1u) pos.push_back(b);
        }
        std::vector<std::uint64_t> counts(std::size_t{1} << pos.size(), 0);
        for (std::size_t x = 0; x < total; ++x) ++counts[compress_bits(xm[x], pos)];
        const std::uint64_t expected = total >> pos.size();
        Result& r = results[si];
        r.patterns = counts.size();
        for (std::size_t pat = 0; pat < counts.size(); ++pat) {
            if (counts[pat] == expected) continue;
            ++r.bad;
            if (r.found.size() < kKeep) {
                IndependenceViolation v;
                for (std::size_t i = 0; i < pos.size(); ++i) {
                    v.subset.push_back(pos[i] + 1);
                    v.pattern.push_back(((pat >> i) & 1u) ? -1 : 1);
                }
                v.count = counts[pat];
                v.expected = expected;
                r.found.push_back(std::move(v));
            }
        }
    }

    IndependenceReport rep;
    rep.m = m;
    rep.u = u;
    rep.plan = plan;
    rep.subsets_tested = subsets.size();
    for (auto& r : results) {
        rep.patterns_tested += r.patterns;
        rep.violation_count += r.bad;
        for (auto& v : r.found) {
            if (rep.violations.size() < kKeep) rep.violations.push_back(std::move(v));
        }
    }
    return rep;
}

nlohmann::ordered_json to_json(const IndependenceReport& r) {
    nlohmann::ordered_json j;
    j["check"] = "independence";
    j["m"] = r.m;
    j["u"] = r.u;
    j["plan"] = {{"max_exhaustive_size", r.plan.max_exhaustive_size},
                 {"include_full_set", r.plan.include_full_set},
                 {"random_subsets", r.plan.random_subsets},
                 {"seed", r.plan.seed}};
    j["subsets_tested"] = r.subsets_tested;
    j["patterns_tested"] = r.patterns_tested;
    j["violation_count"] = r.violation_count;
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) {
        vs.push_back({{"subset", v.subset}, {"pattern", v.pattern}, {"count", v.count}, {"expected", v.expected}});
    }
    j["violations"] = vs;
    j["verdict"] = r.independent() ? "PASS" : "FAIL";
    return j;
}

JointMoment exact_joint_moment(std::size_t m, std::size_t a, std::size_t b, unsigned p, std::size_t cap,
                               int workers) {
    check_exhaustive(m, cap, "exact_joint_moment");
    if (a == 0 || a >= m || b == 0 || b >= m) throw InvalidArgument("exact_joint_moment: a, b must lie in F_m^*");
    if (p == 0) throw InvalidArgument("exact_joint_moment: p must be >= 1");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const std::size_t width = 2 * m + 1;
    const auto hist = tally(m, width * width, workers, [&](std::uint64_t x) {
        const auto ia = static_cast<std::size_t>(cu_of_mask(x, a, m, full) + static_cast<std::int64_t>(m));
        const auto ib = static_cast<std::size_t>(cu_of_mask(x, b, m, full) + static_cast<std::int64_t>(m));
        return ia * width + ib;
    });
    JointMoment out;
    out.sum = 0;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] == 0) continue;
        const std::int64_t ca = static_cast<std::int64_t>(i / width) - static_cast<std::int64_t>(m);
        const std::int64_t cb = static_cast<std::int64_t>(i % width) - static_cast<std::int64_t>(m);
        out.sum += BigInt(hist[i]) * boost::multiprecision::pow(BigInt(ca * cb), 2 * p);
    }
    out.expectation = Rational(out.sum, pow2(m));
    return out;
}

Rational exact_shift_product_moment(std::size_t m, std::span<const std::size_t> shifts, std::size_t cap,
                                    int workers) {
    check_exhaustive(m, cap, "exact_shift_product_moment");
    for (auto s : shifts) {
        if (s >= m) throw InvalidArgument("exact_shift_product_moment: shift out of range");
    }
    if (static_cast<double>(shifts.size()) * std::log2(static_cast<double>(m)) + static_cast<double>(m) > 120.0) {
        throw FeasibilityError("kExhaustiveMaxLength", "exact_shift_product_moment: product overflows 128-bit tally");
    }
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << m);
    __int128 sum = 0;
#pragma omp parallel num_threads(resolve_workers(workers))
    {
        __int128 local = 0;
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < total; ++x) {
            __int128 prod = 1;
            for (auto s : shifts) prod *= cu_of_mask(static_cast<std::uint64_t>(x), s, m, full);
            local += prod;
        }
#pragma omp critical
        sum += local;
    }
    const bool neg = sum < 0;
    unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-sum) : static_cast<unsigned __int128>(sum);
    BigInt big = static_cast<std::uint64_t>(mag >> 64);
    big <<= 64;
    big += static_cast<std::uint64_t>(mag);
    if (neg) big = -big;
    return Rational(big, pow2(m));
}

Rational exact_event_probability(std::size_t m, const SpectrumPredicate& pred, std::size_t cap, int workers) {
    check_exhaustive(m, cap, "exact_event_probability");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << m);
    std::uint64_t hits = 0;
#pragma omp parallel num_threads(resolve_workers(workers)) reduction(+ : hits)
    {
        std::vector<std::int64_t> spec(m);
#pragma omp for schedule(static)
        for (std::int64_t x = 0; x < total; ++x) {
            for (std::size_t u = 0; u < m; ++u) spec[u] = cu_of_mask(static_cast<std::uint64_t>(x), u, m, full);
            if (pred(spec)) ++hits;
        }
    }
    return Rational(BigInt(hits), pow2(m));
}

}  // namespace pacorr
