#include "pacorr/xi_partition.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"

namespace pacorr {

namespace {

void check_enumerable(std::size_t n) {
    if (n == 0 || n > kPartitionMaxLength) {
        throw FeasibilityError("kPartitionMaxLength",
                               "xi-partition enumeration over " + std::to_string(n) + " indices");
    }
}

void validate(const SpecialXi& s) {
    if (s.p == 0) throw InvalidArgument("SpecialXi: p must be >= 1");
    if (s.a == 0 || s.a >= s.m || s.b == 0 || s.b >= s.m) throw InvalidArgument("SpecialXi: a, b must lie in F_m^*");
    if (s.a == s.b) throw InvalidArgument("SpecialXi: a and b must be distinct");
}

}  // namespace

std::size_t SpecialXi::N() const noexcept { return std::min(p / a, p / b); }

XiSequence SpecialXi::xi() const {
    std::vector<std::size_t> e(2 * p, a);
    e.insert(e.end(), 2 * p, b);
    return XiSequence::make(m, std::move(e));
}

SpecialPremises premises(const SpecialXi& s) {
    SpecialPremises pr;
    pr.m_prime = is_prime(s.m);
    pr.nonzero_distinct = s.a != 0 && s.b != 0 && s.a < s.m && s.b < s.m && s.a != s.b;
    pr.a_odd = s.a % 2 == 1;
    pr.coprime = std::gcd(s.a, s.b) == 1;
    pr.small = 2 * static_cast<std::size_t>(s.p) * (s.a + s.b) < s.m;
    return pr;
}

nlohmann::ordered_json to_json(const SpecialPremises& pr) {
    return {{"m_prime", pr.m_prime},   {"nonzero_distinct", pr.nonzero_distinct},
            {"a_odd", pr.a_odd},       {"coprime", pr.coprime},
            {"2p(a+b)<m", pr.small},   {"all", pr.all()}};
}

SpecialXi canonical_special(const SpecialXi& s) {
    validate(s);
    if (!is_prime(s.m)) return s;
    SpecialXi best = s;
    bool found = false;
    for (std::size_t c = 1; c < s.m; ++c) {
        const std::size_t ca = static_cast<std::size_t>(mulmod(s.a, c, s.m));
        const std::size_t cb = static_cast<std::size_t>(mulmod(s.b, c, s.m));
        for (auto [x, y] : {std::pair{ca, cb}, std::pair{cb, ca}}) {
            if (x % 2 == 0 || std::gcd(x, y) != 1) continue;
            const SpecialXi cand{s.m, x, y, s.p};
            if (!found || x + y < best.a + best.b || (x + y == best.a + best.b && x < best.a)) {
                best = cand;
                found = true;
            }
        }
    }
    return best;
}

BlockType block_type(std::uint32_t block, const SpecialXi& s) {
    const std::uint32_t low = s.low_half();
    return {static_cast<unsigned>(std::popcount(block & low)), static_cast<unsigned>(std::popcount(block & ~low))};
}

void for_each_xi_partition(const XiSequence& xi, const std::function<void(std::span<const std::uint32_t>)>& visit) {
    const std::size_t n = xi.n();
    check_enumerable(n);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint8_t> ok(std::size_t{1} << n, 0);
    for (std::uint32_t mask = 1; mask <= full; ++mask) ok[mask] = is_xi_subset_mask(mask, xi) ? 1 : 0;

    std::vector<std::uint32_t> blocks;
    // Each step takes the smallest unplaced index and picks the block holding it.
    std::function<void(std::uint32_t)> rec = [&](std::uint32_t remaining) {
        if (remaining == 0) {
            visit(blocks);
            return;
        }
        const std::uint32_t lowest = remaining & (~remaining + 1);
        const std::uint32_t rest = remaining ^ lowest;
        // All sub-masks of rest, including the empty one.
        std::uint32_t sub = rest;
        while (true) {
            const std::uint32_t block = sub | lowest;
            if (ok[block]) {
                blocks.push_back(block);
                rec(remaining ^ block);
                blocks.pop_back();
            }
            if (sub == 0) break;
            sub = (sub - 1) & rest;
        }
    };
    rec(full);
}

void for_each_xi_partition(const SpecialXi& s, const std::function<void(const XiPartition&)>& visit) {
    validate(s);
    XiPartition part;
    for_each_xi_partition(s.xi(), [&](std::span<const std::uint32_t> blocks) {
        part.blocks.assign(blocks.begin(), blocks.end());
        part.types.clear();
        part.b_count = 0;
        for (auto blk : blocks) {
            const BlockType t = block_type(blk, s);
            part.types.push_back(t);
            if (t.k % 2 == 1) ++part.b_count;
        }
        visit(part);
    });
}

std::vector<XiPartition> enumerate_xi_partitions(const SpecialXi& s) {
    std::vector<XiPartition> out;
    for_each_xi_partition(s, [&](const XiPartition& p) { out.push_back(p); });
    return out;
}

namespace {

void parity_step(std::vector<std::uint64_t>& cur, std::vector<std::uint64_t>& next, std::size_t m, std::size_t a) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t x = 0; x < m; ++x) {
        const std::size_t flip = (std::size_t{1} << x) ^ (std::size_t{1} << ((x + a) % m));
        for (std::size_t st = 0; st < cur.size(); ++st) next[st ^ flip] += cur[st];
    }
    cur.swap(next);
}

}  // namespace

std::vector<std::vector<BigInt>> special_block_counts(const SpecialXi& s) {
    validate(s);
    const std::size_t h = 2 * s.p;
    std::vector<std::vector<BigInt>> table(h + 1, std::vector<BigInt>(h + 1, BigInt(0)));
    if (s.m <= kParityDpMaxModulus) {
        const std::size_t states = std::size_t{1} << s.m;
        std::vector<std::uint64_t> after_a(states, 0), tmp(states, 0), cur, scratch(states, 0);
        after_a[0] = 1;
        for (std::size_t j = 0; j <= h; ++j) {
            if (j > 0) parity_step(after_a, tmp, s.m, s.a);
            cur = after_a;
            for (std::size_t k = 0; k <= h; ++k) {
                if (k > 0) parity_step(cur, scratch, s.m, s.b);
                table[j][k] = cur[0];
            }
        }
        return table;
    }
    for (std::size_t j = 0; j <= h; ++j) {
        for (std::size_t k = 0; k <= h; ++k) {
            if (j + k == 0) {
                table[j][k] = 1;
                continue;
            }
            std::vector<std::size_t> e(j, s.a);
            e.insert(e.end(), k, s.b);
            table[j][k] = count_xi_even(XiSequence::make(s.m, std::move(e)));
        }
    }
    return table;
}

BigInt partition_E(std::span<const std::uint32_t> blocks, const XiSequence& xi) {
    BigInt e = 1;
    for (auto blk : blocks) {
        e *= count_xi_even(restrict_to(xi, blk));
        if (e == 0) break;
    }
    return e;
}

BigInt partition_E(const XiPartition& part, const SpecialXi& s) {
    const auto table = special_block_counts(s);
    BigInt e = 1;
    for (auto t : part.types) e *= table[t.j][t.k];
    return e;
}

std::uint64_t CkTable::c(unsigned k, unsigned n) const {
    auto it = count.find({k, n});
    return it == count.end() ? 0 : it->second;
}

BigInt CkTable::C(unsigned k, unsigned n) const {
    auto it = mass.find({k, n});
    return it == mass.end() ? BigInt(0) : it->second;
}

CkTable tabulate_ck(const SpecialXi& s) {
    validate(s);
    const auto table = special_block_counts(s);
    CkTable t;
    const auto two_p = static_cast<std::int64_t>(2 * s.p);
    for_each_xi_partition(s, [&](const XiPartition& part) {
        const std::int64_t k = two_p - static_cast<std::int64_t>(part.length());
        if (k < 0) throw std::logic_error("xi-partition longer than 2p");
        const std::pair<unsigned, unsigned> key{static_cast<unsigned>(k), part.b_count / 2};
        BigInt e = 1;
        for (auto ty : part.types) e *= table[ty.j][ty.k];
        // Odd b(P) cannot be keyed by n; the caller sees it through the premise checks.
        if (part.b_count % 2 == 0) {
            ++t.count[key];
            t.mass[key] += e;
        }
        ++t.partitions;
    });
    return t;
}

std::uint64_t count_ckn(const SpecialXi& s, unsigned k, unsigned n) { return tabulate_ck(s).c(k, n); }

BigInt double_factorial_odd(unsigned p) {
    BigInt r = 1;
    for (unsigned i = 1; i + 1 <= 2 * p; i += 2) r *= i;
    return r;
}

}  // namespace pacorr
