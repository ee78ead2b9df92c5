#include "pacorr/evenseq.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"
#include "pacorr/oracles.hpp"

namespace pacorr {

namespace {

// Occurrence parities of values in F_m with an O(1) "all even" test.
class ParityTracker {
public:
    explicit ParityTracker(std::size_t m) : odd_(m, 0) {}

    void toggle(std::size_t v) noexcept {
        odd_[v] ^= 1;
        odd_count_ += odd_[v] ? 1 : -1;
    }
    bool all_even() const noexcept { return odd_count_ == 0; }

private:
    std::vector<std::uint8_t> odd_;
    std::ptrdiff_t odd_count_ = 0;
};

std::uint64_t count_from(const XiSequence& xi, std::size_t depth, ParityTracker& par) {
    const std::size_t m = xi.m;
    const std::size_t a = xi.entries[depth];
    std::uint64_t count = 0;
    const bool last = depth + 1 == xi.n();
    for (std::size_t x = 0; x < m; ++x) {
        const std::size_t y = (x + a) % m;
        par.toggle(x);
        par.toggle(y);
        if (last) {
            count += par.all_even() ? 1 : 0;
        } else {
            count += count_from(xi, depth + 1, par);
        }
        par.toggle(y);
        par.toggle(x);
    }
    return count;
}

double log2_tuples(const XiSequence& xi) {
    return static_cast<double>(xi.n()) * std::log2(static_cast<double>(xi.m));
}

bool brute_force_feasible(const XiSequence& xi) {
    return log2_tuples(xi) <= std::log2(static_cast<double>(kBruteForceMaxTuples));
}

struct Memo {
    std::shared_mutex mu;
    std::map<XiSequence, std::uint64_t> table;
};

Memo& memo() {
    static Memo instance;
    return instance;
}

}  // namespace

XiSequence XiSequence::make(std::size_t m, std::vector<std::size_t> entries) {
    if (m == 0) throw InvalidArgument("XiSequence: modulus must be >= 1");
    if (entries.empty()) throw InvalidArgument("XiSequence: length must be >= 1");
    for (auto a : entries) {
        if (a >= m) throw InvalidArgument("XiSequence: entry " + std::to_string(a) + " not reduced mod " + std::to_string(m));
    }
    return XiSequence{m, std::move(entries)};
}

bool is_even(std::span<const std::size_t> seq) {
    std::vector<std::size_t> v(seq.begin(), seq.end());
    std::sort(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2 != 0) return false;
        i = j;
    }
    return true;
}

bool is_xi_even(std::span<const std::size_t> x, const XiSequence& xi) {
    if (x.size() != xi.n()) throw InvalidArgument("is_xi_even: length mismatch");
    std::vector<std::size_t> seq;
    seq.reserve(2 * x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        seq.push_back(x[i] % xi.m);
        seq.push_back((x[i] + xi.entries[i]) % xi.m);
    }
    return is_even(seq);
}

bool is_exactly_xi_even(std::span<const std::size_t> x, const XiSequence& xi) {
    if (!is_xi_even(x, xi)) return false;
    const std::size_t n = xi.n();
    if (n >= 63) throw FeasibilityError("kBruteForceMaxTuples", "is_exactly_xi_even: too many indices");
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        std::vector<std::size_t> seq;
        for (std::size_t j = 0; j < n; ++j) {
            if ((mask >> j) & 1u) {
                seq.push_back(x[j] % xi.m);
                seq.push_back((x[j] + xi.entries[j]) % xi.m);
            }
        }
        if (is_even(seq)) return false;
    }
    return true;
}

std::uint64_t count_xi_even_bruteforce(const XiSequence& xi, int workers) {
    if (!brute_force_feasible(xi)) {
        throw FeasibilityError("kBruteForceMaxTuples", "count_xi_even_bruteforce: m^n = " + std::to_string(xi.m) + "^" +
                                                           std::to_string(xi.n()) + " tuples");
    }
    const std::size_t m = xi.m;
    const std::size_t a0 = xi.entries[0];
    if (xi.n() == 1) return a0 == 0 ? m : 0;
    std::uint64_t total = 0;
    // Split the outer loop over x_1 across workers.
#pragma omp parallel num_threads(resolve_workers(workers)) reduction(+ : total)
    {
        ParityTracker par(m);
#pragma omp for schedule(dynamic)
        for (std::int64_t x1 = 0; x1 < static_cast<std::int64_t>(m); ++x1) {
            const auto x = static_cast<std::size_t>(x1);
            par.toggle(x);
            par.toggle((x + a0) % m);
            total += count_from(xi, 1, par);
            par.toggle((x + a0) % m);
            par.toggle(x);
        }
    }
    return total;
}

std::uint64_t count_xi_even_parity_dp(const XiSequence& xi) {
    const std::size_t m = xi.m;
    if (m > kParityDpMaxModulus) {
        throw FeasibilityError("kParityDpMaxModulus", "count_xi_even_parity_dp: m = " + std::to_string(m));
    }
    if (log2_tuples(xi) >= 63.0) {
        throw FeasibilityError("kParityDpMaxModulus", "count_xi_even_parity_dp: m^n overflows a 64-bit count");
    }
    const std::size_t states = std::size_t{1} << m;
    std::vector<std::uint64_t> cur(states, 0), next(states, 0);
    cur[0] = 1;
    for (std::size_t a : xi.entries) {
        if (a == 0) {
            for (auto& c : cur) c *= m;
            continue;
        }
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t x = 0; x < m; ++x) {
            const std::size_t flip = (std::size_t{1} << x) ^ (std::size_t{1} << ((x + a) % m));
            for (std::size_t s = 0; s < states; ++s) next[s ^ flip] += cur[s];
        }
        cur.swap(next);
    }
    return cur[0];
}

XiSequence canonicalize(const XiSequence& xi) {
    XiSequence best = xi;
    std::sort(best.entries.begin(), best.entries.end());
    if (xi.m < 2 || !is_prime(xi.m)) return best;
    XiSequence cand = xi;
    for (std::size_t c = 2; c < xi.m; ++c) {
        for (std::size_t i = 0; i < xi.n(); ++i) cand.entries[i] = static_cast<std::size_t>(mulmod(xi.entries[i], c, xi.m));
        std::sort(cand.entries.begin(), cand.entries.end());
        if (cand.entries < best.entries) best.entries = cand.entries;
    }
    return best;
}

std::uint64_t count_xi_even(const XiSequence& xi) {
    const XiSequence key = canonicalize(xi);
    auto& mm = memo();
    {
        std::shared_lock lock(mm.mu);
        if (auto it = mm.table.find(key); it != mm.table.end()) return it->second;
    }
    const bool bf = brute_force_feasible(key);
    const bool dp = key.m <= kParityDpMaxModulus && log2_tuples(key) < 63.0;
    std::uint64_t value = 0;
    if (bf && dp) {
        const double bf_cost = std::pow(static_cast<double>(key.m), static_cast<double>(key.n()));
        const double dp_cost = static_cast<double>(key.n() * key.m) * std::ldexp(1.0, static_cast<int>(key.m));
        value = bf_cost <= dp_cost ? count_xi_even_bruteforce(key, 1) : count_xi_even_parity_dp(key);
    } else if (bf) {
        value = count_xi_even_bruteforce(key, 1);
    } else if (dp) {
        value = count_xi_even_parity_dp(key);
    } else {
        throw FeasibilityError("kBruteForceMaxTuples", "count_xi_even: neither brute force nor parity DP is feasible");
    }
    std::unique_lock lock(mm.mu);
    mm.table[key] = value;
    return value;
}

bool is_xi_subset(std::span<const std::size_t> indices, const XiSequence& xi) {
    std::uint64_t mask = 0;
    for (auto j : indices) {
        if (j == 0 || j > xi.n()) throw InvalidArgument("is_xi_subset: index out of range");
        if (j > 64) throw InvalidArgument("is_xi_subset: index beyond 64");
        mask |= std::uint64_t{1} << (j - 1);
    }
    return is_xi_subset_mask(mask, xi);
}

bool is_xi_subset_mask(std::uint64_t mask, const XiSequence& xi) {
    const std::size_t m = xi.m;
    // Reachable signed sums mod m.
    std::vector<std::uint8_t> reach(m, 0), next(m, 0);
    reach[0] = 1;
    for (std::size_t j = 0; j < xi.n() && j < 64; ++j) {
        if (!((mask >> j) & 1u)) continue;
        const std::size_t a = xi.entries[j];
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t s = 0; s < m; ++s) {
            if (!reach[s]) continue;
            next[(s + a) % m] = 1;
            next[(s + m - a) % m] = 1;
        }
        reach.swap(next);
    }
    return reach[0] != 0;
}

XiSequence restrict_to(const XiSequence& xi, std::uint64_t mask) {
    XiSequence out{xi.m, {}};
    for (std::size_t j = 0; j < xi.n() && j < 64; ++j) {
        if ((mask >> j) & 1u) out.entries.push_back(xi.entries[j]);
    }
    return out;
}

}  // namespace pacorr
