#include "pacorr/checks.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"

namespace pacorr {

namespace {

using json = nlohmann::ordered_json;

BigInt factorial(std::int64_t n) {
    BigInt r = 1;
    for (std::int64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt pow_big(const BigInt& base, std::uint64_t e) {
    BigInt r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

Rational pow2(std::int64_t e) {
    if (e >= 0) return Rational(pow_big(2, static_cast<std::uint64_t>(e)));
    return Rational(BigInt(1), pow_big(2, static_cast<std::uint64_t>(-e)));
}

BigInt binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

LemmaReport make_report(std::string lemma, json params, std::string lhs, std::string rhs, Verdict v) {
    LemmaReport r;
    r.lemma = std::move(lemma);
    r.params = std::move(params);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.verdict = v;
    return r;
}

std::uint64_t tuple_count(std::size_t base, std::size_t n) {
    const double lg = static_cast<double>(n) * std::log2(static_cast<double>(base));
    if (lg > 40.0) throw FeasibilityError("kBruteForceMaxTuples", "sweep over " + std::to_string(base) + "^" + std::to_string(n) + " tuples");
    std::uint64_t t = 1;
    for (std::size_t i = 0; i < n; ++i) t *= base;
    return t;
}

// Digits of idx in base `base`, offset by lo, least significant first.
std::vector<std::size_t> decode_tuple(std::uint64_t idx, std::size_t base, std::size_t n, std::size_t lo) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = lo + idx % base;
        idx /= base;
    }
    return v;
}

std::uint64_t encode_tuple(std::span<const std::size_t> v, std::size_t m) {
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) idx = idx * m + v[i];
    return idx;
}

json special_params(const SpecialXi& s) {
    return {{"m", s.m}, {"a", s.a}, {"b", s.b}, {"p", s.p}, {"d", s.d()}, {"N", s.N()}};
}

}  // namespace

LemmaReport check_moment_identity(std::size_t m, std::size_t a, std::size_t b, unsigned p, std::size_t cap,
                                  int workers) {
    const JointMoment jm = exact_joint_moment(m, a, b, p, cap, workers);
    const SpecialXi s{m, a, b, p};
    const BigInt e = count_xi_even(s.xi());
    auto r = make_report("moment-identity", {{"m", m}, {"a", a}, {"b", b}, {"p", p}}, to_decimal(jm.expectation),
                         to_decimal(e), verdict_of(jm.expectation == Rational(e)));
    r.extra["sum_over_sequences"] = to_decimal(jm.sum);
    r.extra["sequences"] = to_decimal(pow_big(2, m));
    return r;
}

LemmaReport check_markov_step(std::size_t m, std::size_t a, std::size_t b, unsigned p, std::int64_t theta1,
                              std::int64_t theta2, std::size_t cap, int workers) {
    if (theta1 <= 0 || theta2 <= 0) throw InvalidArgument("check_markov_step: thresholds must be positive");
    if (a == 0 || a >= m || b == 0 || b >= m) throw InvalidArgument("check_markov_step: shifts must lie in F_m^*");
    const Rational prob = exact_event_probability(
        m,
        [=](std::span<const std::int64_t> c) {
            return std::llabs(c[a]) >= theta1 && std::llabs(c[b]) >= theta2;
        },
        cap, workers);
    const SpecialXi s{m, a, b, p};
    const BigInt e = count_xi_even(s.xi());
    const Rational rhs(e, pow_big(BigInt(theta1) * theta2, 2 * static_cast<std::uint64_t>(p)));
    auto r = make_report("markov-step",
                         {{"m", m}, {"a", a}, {"b", b}, {"p", p}, {"theta1", theta1}, {"theta2", theta2}},
                         to_decimal(prob), to_decimal(rhs), verdict_of(prob <= rhs));
    r.extra["lhs_exact"] = rational_to_json(prob);
    r.extra["rhs_exact"] = rational_to_json(rhs);
    return r;
}

LemmaReport check_scaling_invariance(std::size_t m, std::size_t n, int workers) {
    if (!is_prime(m)) throw InvalidArgument("check_scaling_invariance: m must be prime");
    if (n == 0) throw InvalidArgument("check_scaling_invariance: n must be >= 1");
    const std::uint64_t total = tuple_count(m, n);
    std::vector<std::uint64_t> e(total);
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_workers(workers))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
        const auto v = decode_tuple(static_cast<std::uint64_t>(i), m, n, 0);
        e[static_cast<std::size_t>(i)] = count_xi_even_bruteforce(XiSequence::make(m, v), 1);
    }

    std::uint64_t violations = 0, scalings = 0, permutations = 0, canonical_mismatch = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto v = decode_tuple(i, m, n, 0);
        std::vector<std::size_t> w(n);
        for (std::size_t c = 2; c < m; ++c) {
            for (std::size_t k = 0; k < n; ++k) w[k] = static_cast<std::size_t>(mulmod(v[k], c, m));
            ++scalings;
            if (e[encode_tuple(w, m)] != e[i]) ++violations;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        while (std::next_permutation(order.begin(), order.end())) {
            for (std::size_t k = 0; k < n; ++k) w[k] = v[order[k]];
            ++permutations;
            if (e[encode_tuple(w, m)] != e[i]) ++violations;
        }
        if (count_xi_even(canonicalize(XiSequence::make(m, v))) != e[i]) ++canonical_mismatch;
    }
    auto r = make_report("scaling-invariance", {{"m", m}, {"n", n}}, std::to_string(violations + canonical_mismatch), "0",
                         verdict_of(violations + canonical_mismatch == 0));
    r.extra["tuples"] = total;
    r.extra["scalings_checked"] = scalings;
    r.extra["permutations_checked"] = permutations;
    r.extra["canonical_mismatches"] = canonical_mismatch;
    return r;
}

LemmaReport check_even_implies_subset(std::size_t m, std::size_t n) {
    if (n == 0 || n > 63) throw InvalidArgument("check_even_implies_subset: 1 <= n <= 63");
    const std::uint64_t total = tuple_count(m, n);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::uint64_t violations = 0, with_even = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        const XiSequence xi = XiSequence::make(m, decode_tuple(i, m, n, 0));
        if (count_xi_even(xi) == 0) continue;
        ++with_even;
        if (!is_xi_subset_mask(full, xi)) ++violations;
    }
    auto r = make_report("even-implies-subset", {{"m", m}, {"n", n}}, std::to_string(violations), "0",
                         verdict_of(violations == 0));
    r.extra["tuples"] = total;
    r.extra["tuples_with_even_x"] = with_even;
    return r;
}

LemmaReport check_even_count_bound(std::size_t m, std::size_t n) {
    if (n < 2) throw InvalidArgument("check_even_count_bound: n must be >= 2");
    if (m < 2) throw InvalidArgument("check_even_count_bound: m must be >= 2");
    const std::uint64_t total = tuple_count(m - 1, n);
    const BigInt bound = pow_big(2, n - 2) * factorial(static_cast<std::int64_t>(n) - 1) * m;
    std::uint64_t violations = 0, max_e = 0;
    std::vector<std::size_t> worst;
    for (std::uint64_t i = 0; i < total; ++i) {
        const auto v = decode_tuple(i, m - 1, n, 1);
        const std::uint64_t e = count_xi_even(XiSequence::make(m, v));
        if (e > max_e || worst.empty()) {
            max_e = e;
            worst = v;
        }
        if (BigInt(e) > bound) ++violations;
    }
    auto r = make_report("even-count-bound", {{"m", m}, {"n", n}}, std::to_string(max_e), to_decimal(bound),
                         verdict_of(violations == 0));
    r.extra["tuples"] = total;
    r.extra["violations"] = violations;
    r.extra["argmax_xi"] = worst;
    return r;
}

LemmaReport check_factorial_product(std::span<const unsigned> N) {
    if (N.empty()) throw InvalidArgument("check_factorial_product: need r >= 1 values");
    const auto r_count = static_cast<std::int64_t>(N.size());
    BigInt lhs = pow_big(2, N.size());
    std::int64_t sum = 0;
    bool premise = true;
    for (auto x : N) {
        if (x == 0) throw InvalidArgument("check_factorial_product: N_i must be positive");
        lhs *= factorial(static_cast<std::int64_t>(x) - 1);
        sum += x;
        premise = premise && x > 2;
    }
    const BigInt rhs = 4 * factorial(sum - (2 * r_count - 1));
    auto r = make_report("factorial-product", {{"N", std::vector<unsigned>(N.begin(), N.end())}, {"r", r_count}},
                         to_decimal(lhs), to_decimal(rhs), premise ? verdict_of(lhs <= rhs) : Verdict::premise_unmet);
    r.extra["premise"] = "every N_i > 2";
    return r;
}

LemmaReport check_factorial_product_sweep(unsigned max_N, unsigned max_r) {
    if (max_N < 3 || max_r < 1) throw InvalidArgument("check_factorial_product_sweep: max_N >= 3, max_r >= 1");
    std::uint64_t tuples = 0, violations = 0;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned hi) {
        if (!cur.empty()) {
            ++tuples;
            if (check_factorial_product(cur).verdict != Verdict::pass) ++violations;
        }
        if (cur.size() == max_r) return;
        for (unsigned x = 3; x <= hi; ++x) {
            cur.push_back(x);
            rec(x);
            cur.pop_back();
        }
    };
    rec(max_N);
    auto r = make_report("factorial-product", {{"max_N", max_N}, {"max_r", max_r}}, std::to_string(violations), "0",
                         verdict_of(violations == 0));
    r.extra["tuples"] = tuples;
    return r;
}

LemmaReport check_partition_sum(const XiSequence& xi) {
    BigInt sum = 0;
    std::uint64_t parts = 0;
    for_each_xi_partition(xi, [&](std::span<const std::uint32_t> blocks) {
        sum += partition_E(blocks, xi);
        ++parts;
    });
    const BigInt e = count_xi_even(xi);
    auto r = make_report("partition-sum", {{"m", xi.m}, {"xi", xi.entries}}, to_decimal(e), to_decimal(sum),
                         verdict_of(e <= sum));
    r.extra["partitions"] = parts;
    return r;
}

namespace {

// Decomposition of a mask into (2,0)/(0,2) blocks plus exactly `need_ba`
// xi-subsets of type (b,a), memoised over (mask, need_ba).
class Decomposer {
public:
    Decomposer(const SpecialXi& s, const std::vector<std::uint8_t>& ok) : s_(s), memo_(ok.size() * 2, -1) {
        const std::uint32_t full = static_cast<std::uint32_t>(ok.size() - 1);
        for (std::uint32_t blk = 1; blk <= full; ++blk) {
            if (!ok[blk]) continue;
            const BlockType t = block_type(blk, s);
            if ((t.j == 2 && t.k == 0) || (t.j == 0 && t.k == 2)) pairs_.push_back(blk);
            if (t.j == s.b && t.k == s.a) ba_.push_back(blk);
        }
    }

    bool decomposes(std::uint32_t mask, int need_ba) {
        if (mask == 0) return need_ba == 0;
        auto& slot = memo_[static_cast<std::size_t>(mask) * 2 + static_cast<std::size_t>(need_ba)];
        if (slot >= 0) return slot != 0;
        const std::uint32_t low = mask & (~mask + 1);
        bool found = false;
        for (auto blk : pairs_) {
            if ((blk & low) && (blk & ~mask) == 0 && decomposes(mask ^ blk, need_ba)) {
                found = true;
                break;
            }
        }
        if (!found && need_ba > 0) {
            for (auto blk : ba_) {
                if ((blk & low) && (blk & ~mask) == 0 && decomposes(mask ^ blk, need_ba - 1)) {
                    found = true;
                    break;
                }
            }
        }
        slot = found ? 1 : 0;
        return found;
    }

private:
    const SpecialXi& s_;
    std::vector<std::int8_t> memo_;
    std::vector<std::uint32_t> pairs_;
    std::vector<std::uint32_t> ba_;
};

bool odd_k(std::uint32_t blk, const SpecialXi& s) { return block_type(blk, s).k % 2 == 1; }

// Some block splits into two xi-subsets with the same count of odd-k parts.
bool splits_once(const XiPartition& part, const SpecialXi& s, const std::vector<std::uint8_t>& ok) {
    for (auto blk : part.blocks) {
        const std::uint32_t low = blk & (~blk + 1);
        const std::uint32_t rest = blk ^ low;
        const int target = odd_k(blk, s) ? 1 : 0;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t first = sub | low;
            const std::uint32_t second = blk ^ first;
            if (second != 0 && ok[first] && ok[second] &&
                (odd_k(first, s) ? 1 : 0) + (odd_k(second, s) ? 1 : 0) == target) {
                return true;
            }
            if (sub == 0) break;
        }
    }
    return false;
}

}  // namespace

std::vector<LemmaReport> check_partition_layer(const SpecialXi& s) {
    const SpecialPremises pr = premises(s);
    const auto gate = [&](bool ok) { return pr.all() ? verdict_of(ok) : Verdict::premise_unmet; };
    const json base = special_params(s);
    const auto table = special_block_counts(s);
    const XiSequence xi = s.xi();
    const std::size_t n4 = xi.n();
    const std::int64_t two_p = 2 * static_cast<std::int64_t>(s.p);
    const std::int64_t d = s.d();
    const auto N = static_cast<std::int64_t>(s.N());
    const BigInt df = double_factorial_odd(s.p);
    const BigInt m_2p = pow_big(s.m, 2 * static_cast<std::uint64_t>(s.p));

    std::vector<std::uint8_t> ok(std::size_t{1} << n4, 0);
    for (std::uint32_t mask = 1; mask < ok.size(); ++mask) ok[mask] = is_xi_subset_mask(mask, xi) ? 1 : 0;

    std::uint64_t partitions = 0, c00 = 0, pair_total = 0, pair_bad = 0, b_odd = 0, len_bad = 0, eq_bad = 0,
                  eq_cases = 0, split_tested = 0, split_bad = 0, ep_bad = 0, zero_bad = 0;
    BigInt C00 = 0, sumE = 0;
    std::map<std::int64_t, BigInt> max_e_by_k;

    for_each_xi_partition(s, [&](const XiPartition& part) {
        ++partitions;
        const auto ell = static_cast<std::int64_t>(part.length());
        const std::int64_t k = two_p - ell;
        BigInt e = 1;
        for (auto t : part.types) e *= table[t.j][t.k];
        sumE += e;

        bool all_pairs = true;
        std::int64_t n_ba = 0, n_20 = 0, n_02 = 0;
        for (auto t : part.types) {
            const bool is20 = t.j == 2 && t.k == 0;
            const bool is02 = t.j == 0 && t.k == 2;
            all_pairs = all_pairs && (is20 || is02);
            n_20 += is20 ? 1 : 0;
            n_02 += is02 ? 1 : 0;
            n_ba += (t.j == s.b && t.k == s.a) ? 1 : 0;
        }
        if (all_pairs) {
            ++pair_total;
            if (e != m_2p) ++pair_bad;
        }
        if (ell == two_p && part.b_count == 0) {
            ++c00;
            C00 += e;
        }

        const BigInt ebound = pow_big(2, static_cast<std::uint64_t>(2 * k + 2)) * factorial(2 * k + 1) *
                              pow_big(s.m, static_cast<std::uint64_t>(two_p - k));
        if (e > ebound) ++ep_bad;
        auto& mx = max_e_by_k[k];
        if (e > mx) mx = e;

        if (part.b_count % 2 == 1) {
            ++b_odd;
            return;
        }
        const std::int64_t n = part.b_count / 2;
        const std::int64_t lbound = two_p - n * d;
        if (ell > lbound) ++len_bad;
        const std::int64_t want_20 = static_cast<std::int64_t>(s.p) - n * static_cast<std::int64_t>(s.b);
        const std::int64_t want_02 = static_cast<std::int64_t>(s.p) - n * static_cast<std::int64_t>(s.a);
        const bool census = n_ba == 2 * n && n_20 == want_20 && n_02 == want_02 && ell == 2 * n + want_20 + want_02;
        if (ell == lbound || census) ++eq_cases;
        if ((ell == lbound) != census) ++eq_bad;
        if (ell < lbound) {
            ++split_tested;
            if (!splits_once(part, s, ok)) ++split_bad;
        }
        if (k < n * d || n > N) ++zero_bad;
    });

    // Block decompositions over every xi-subset of {1..4p}.
    Decomposer dec(s, ok);
    std::uint64_t subsets = 0, struct_a_bad = 0, struct_b_bad = 0;
    for (std::uint32_t mask = 1; mask < ok.size(); ++mask) {
        if (!ok[mask]) continue;
        ++subsets;
        const BlockType t = block_type(mask, s);
        if (t.j % 2 == 0 && t.k % 2 == 0 && !dec.decomposes(mask, 0)) ++struct_a_bad;
        if ((t.k % 2 == 1) != dec.decomposes(mask, 1)) ++struct_b_bad;
    }

    const BigInt e_xi = table[2 * s.p][2 * s.p];
    std::vector<LemmaReport> out;
    auto add = [&](const std::string& id, const std::string& lhs, const std::string& rhs, Verdict v) -> LemmaReport& {
        out.push_back(make_report(id, base, lhs, rhs, v));
        return out.back();
    };
    add("c00", std::to_string(c00), to_decimal(BigInt(df * df)), gate(BigInt(c00) == df * df));
    add("C00", to_decimal(C00), to_decimal(BigInt(df * df * m_2p)), gate(C00 == df * df * m_2p));
    add("pair-block-E", std::to_string(pair_bad), "0", gate(pair_bad == 0)).extra["pair_partitions"] = pair_total;
    add("b-even", std::to_string(b_odd), "0", gate(b_odd == 0)).extra["partitions"] = partitions;
    add("length-bound", std::to_string(len_bad), "0", gate(len_bad == 0)).extra["partitions"] = partitions;
    add("length-equality-census", std::to_string(eq_bad), "0", gate(eq_bad == 0)).extra["equality_or_census_cases"] =
        eq_cases;
    {
        auto& r = add("partition-E-bound", std::to_string(ep_bad), "0", gate(ep_bad == 0));
        json per_k = json::array();
        for (const auto& [k, mx] : max_e_by_k) {
            const BigInt ebound = pow_big(2, static_cast<std::uint64_t>(2 * k + 2)) * factorial(2 * k + 1) *
                                  pow_big(s.m, static_cast<std::uint64_t>(two_p - k));
            per_k.push_back({{"k", k}, {"max_E", to_decimal(mx)}, {"bound", to_decimal(ebound)}});
        }
        r.extra["by_k"] = per_k;
    }
    {
        auto& r = add("block-structure", std::to_string(struct_a_bad + struct_b_bad), "0",
                      gate(struct_a_bad + struct_b_bad == 0));
        r.extra["xi_subsets"] = subsets;
        r.extra["even_even_not_pairs"] = struct_a_bad;
        r.extra["odd_k_mismatch"] = struct_b_bad;
    }
    add("split", std::to_string(split_bad), "0", gate(split_bad == 0)).extra["partitions_below_bound"] = split_tested;
    add("ck-vanishing", std::to_string(zero_bad), "0", gate(zero_bad == 0));
    add("partition-sum", to_decimal(e_xi), to_decimal(sumE), verdict_of(e_xi <= sumE)).extra["partitions"] = partitions;
    for (auto& r : out) r.extra["premises"] = to_json(pr);
    return out;
}

std::vector<LemmaReport> check_ck_bounds(const SpecialXi& s) {
    const SpecialPremises pr = premises(s);
    const auto gate = [&](bool ok) { return pr.all() ? verdict_of(ok) : Verdict::premise_unmet; };
    const CkTable t = tabulate_ck(s);
    const auto p = static_cast<std::int64_t>(s.p);
    const std::int64_t d = s.d();
    const auto N = static_cast<std::int64_t>(s.N());
    const BigInt df = double_factorial_odd(s.p);
    const BigInt df2 = df * df;
    const BigInt P = p;
    std::vector<LemmaReport> out;
    auto add = [&](const std::string& id, json extra_params, const BigInt& lhs, const Rational& rhs) -> LemmaReport& {
        json params = special_params(s);
        for (auto& [k, v] : extra_params.items()) params[k] = v;
        out.push_back(make_report(id, params, to_decimal(lhs), to_decimal(rhs), gate(Rational(lhs) <= rhs)));
        return out.back();
    };

    for (std::int64_t k = 1; k <= 2 * p - 1; ++k) {
        const Rational rhs =
            pow2(k - 2) * Rational(2 * p * (2 * p - 1)) * Rational(pow_big(P, static_cast<std::uint64_t>(2 * k - 2)) * df2);
        add("ck-n0", {{"k", k}}, t.c(static_cast<unsigned>(k), 0), rhs);
    }
    for (std::int64_t n = 1; n <= N; ++n) {
        const std::int64_t k = n * d;
        const Rational rhs = Rational(pow_big(2, static_cast<std::uint64_t>(n)) * p * (p - 1) *
                                      pow_big(P, static_cast<std::uint64_t>(n * (d + 2) - 2)) * df2);
        const BigInt c = t.c(static_cast<unsigned>(k), static_cast<unsigned>(n));
        auto& r = add("ck-minimal-length", {{"n", n}, {"k", k}}, c, rhs);
        BigInt formula = 1;
        const auto a = static_cast<std::int64_t>(s.a), b = static_cast<std::int64_t>(s.b);
        for (std::int64_t i = 0; i <= 2 * n - 1; ++i) formula *= binomial(2 * p - i * a, a) * binomial(2 * p - i * b, b);
        const std::int64_t rem_a = p - n * b, rem_b = p - n * a;
        if (rem_a < 0 || rem_b < 0) {
            formula = 0;
        } else {
            formula *= double_factorial_odd(static_cast<unsigned>(rem_a)) * double_factorial_odd(static_cast<unsigned>(rem_b));
        }
        r.extra["product_formula"] = to_decimal(formula);
        r.extra["product_formula_matches_enumeration"] = formula == c;
    }
    for (std::int64_t n = 0; n <= N; ++n) {
        for (std::int64_t j = 0; n * d + j <= 2 * p - 1; ++j) {
            const std::int64_t k = n * d + j;
            const Rational rhs = Rational(pow_big(2, static_cast<std::uint64_t>(n + j)) *
                                          pow_big(P, static_cast<std::uint64_t>(n * (d + 2) + 2 * j)) * df2);
            add("ck-growth", {{"n", n}, {"j", j}, {"k", k}}, t.c(static_cast<unsigned>(k), static_cast<unsigned>(n)), rhs);
        }
    }
    for (std::int64_t e = 0; e <= N; ++e) {
        for (std::int64_t k = e * d; k <= 2 * p - 1; ++k) {
            BigInt sum = 0;
            for (std::int64_t n = 0; n <= e; ++n) sum += t.c(static_cast<unsigned>(k), static_cast<unsigned>(n));
            const Rational rhs = Rational(pow_big(2, static_cast<std::uint64_t>(k + 1)) *
                                          pow_big(P, static_cast<std::uint64_t>(3 * k)) * df2);
            add("ck-sum", {{"e", e}, {"k", k}}, sum, rhs);
        }
    }
    for (auto& r : out) r.extra["premises"] = to_json(pr);
    return out;
}

LemmaReport check_moment_bound(std::size_t m, std::size_t a, std::size_t b, std::size_t cap, int workers) {
    if (m < 3) throw InvalidArgument("check_moment_bound: m must be >= 3");
    if (a == 0 || b == 0 || a >= m || b >= m || a == b) throw InvalidArgument("check_moment_bound: need distinct a, b in F_m^*");
    const double lm = std::log(static_cast<double>(m));
    const auto p = static_cast<unsigned>(std::floor(lm));
    const SpecialXi s{m, a, b, p};
    const bool premise = is_prime(m) && static_cast<double>(a + b) < static_cast<double>(m) / (2.0 * lm);

    BigInt e;
    std::string route = "count_xi_even";
    try {
        e = count_xi_even(s.xi());
    } catch (const FeasibilityError&) {
        const JointMoment jm = exact_joint_moment(m, a, b, p, cap, workers);
        if (boost::multiprecision::denominator(jm.expectation) != 1) {
            throw std::logic_error("check_moment_bound: joint moment is not an integer");
        }
        e = boost::multiprecision::numerator(jm.expectation);
        route = "exhaustive_joint_moment";
    }
    const BigInt df = double_factorial_odd(p);
    const BigInt rhs = 2 * df * df * pow_big(m, 2 * static_cast<std::uint64_t>(p));
    auto r = make_report("moment-bound", {{"m", m}, {"a", a}, {"b", b}, {"p", p}}, to_decimal(e), to_decimal(rhs),
                         premise ? verdict_of(e <= rhs) : Verdict::premise_unmet);
    r.extra["route"] = route;
    r.extra["a+b<m/(2 ln m)"] = premise;
    r.extra["note"] = "stated for m sufficiently large; no onset is asserted";
    return r;
}

LemmaReport check_double_factorial(unsigned p) {
    const BigInt lhs = double_factorial_odd(p);
    const BigInt rhs = factorial(2 * static_cast<std::int64_t>(p)) / (factorial(p) * pow_big(2, p));
    return make_report("double-factorial", {{"p", p}}, to_decimal(lhs), to_decimal(rhs), verdict_of(lhs == rhs));
}

}  // namespace pacorr
