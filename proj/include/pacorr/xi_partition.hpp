#pragma once

// Set partitions of {1..n} whose blocks are all xi-subsets, and the special
// sequence xi = (a x 2p, b x 2p) they are counted for.
//
// Blocks are bit masks: bit i-1 stands for index i. For the special xi the
// first half {1..2p} carries a and the second half {2p+1..4p} carries b; a
// block of type (j, k) has j indices in the first half and k in the second.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "pacorr/evenseq.hpp"
#include "pacorr/report.hpp"

namespace pacorr {

/// Partition enumeration is limited to n = 4p <= this.
inline constexpr std::size_t kPartitionMaxLength = 12;

struct SpecialXi {
    std::size_t m = 0;
    std::size_t a = 0;
    std::size_t b = 0;
    unsigned p = 0;

    std::size_t n() const noexcept { return 4 * static_cast<std::size_t>(p); }
    /// d = a + b - 2.
    std::int64_t d() const noexcept { return static_cast<std::int64_t>(a + b) - 2; }
    /// N = min(floor(p/a), floor(p/b)).
    std::size_t N() const noexcept;
    XiSequence xi() const;
    /// Mask of the first half {1..2p}.
    std::uint32_t low_half() const noexcept { return (std::uint32_t{1} << (2 * p)) - 1; }
};

/// The standing assumptions under which the partition lemmas are stated.
struct SpecialPremises {
    bool m_prime = false;
    bool nonzero_distinct = false;  // a, b in F_m^*, a != b
    bool a_odd = false;
    bool coprime = false;           // gcd(a, b) = 1 as integers
    bool small = false;             // 2p(a + b) < m

    bool all() const noexcept { return m_prime && nonzero_distinct && a_odd && coprime && small; }
};

SpecialPremises premises(const SpecialXi& s);
nlohmann::ordered_json to_json(const SpecialPremises& pr);

/// Representative of s under scaling by c in F_m^* and swapping a <-> b with
/// a odd and gcd(a, b) = 1, minimising a + b (then a). E(xi) is unchanged.
/// Returns s itself when no scaling makes a odd and coprime with b.
SpecialXi canonical_special(const SpecialXi& s);

struct BlockType {
    unsigned j = 0;
    unsigned k = 0;
    friend auto operator<=>(const BlockType&, const BlockType&) = default;
};

struct XiPartition {
    std::vector<std::uint32_t> blocks;
    std::vector<BlockType> types;
    /// Number of blocks whose k is odd.
    unsigned b_count = 0;

    std::size_t length() const noexcept { return blocks.size(); }
};

BlockType block_type(std::uint32_t block, const SpecialXi& s);

/// Visits every partition of {1..n} into xi-subsets, smallest-element-first.
/// Requires n <= kPartitionMaxLength.
void for_each_xi_partition(const XiSequence& xi, const std::function<void(std::span<const std::uint32_t>)>& visit);

/// Same walk over the special xi with block types and b(P) filled in.
void for_each_xi_partition(const SpecialXi& s, const std::function<void(const XiPartition&)>& visit);

std::vector<XiPartition> enumerate_xi_partitions(const SpecialXi& s);

/// table[j][k] = E of the sequence (a x j, b x k), for 0 <= j, k <= 2p. Every
/// block of a partition of the special xi is counted by one entry. Uses one
/// shared parity-DP sweep when m <= kParityDpMaxModulus, count_xi_even otherwise.
std::vector<std::vector<BigInt>> special_block_counts(const SpecialXi& s);

/// E(P): product over blocks J of E((a_j)_{j in J}).
BigInt partition_E(std::span<const std::uint32_t> blocks, const XiSequence& xi);
BigInt partition_E(const XiPartition& part, const SpecialXi& s);

/// c_k^{(n)} and C_k^{(n)} for all (k, n) realised by some xi-partition, keyed by (k, n).
struct CkTable {
    std::map<std::pair<unsigned, unsigned>, std::uint64_t> count;  // c_k^(n)
    std::map<std::pair<unsigned, unsigned>, BigInt> mass;          // C_k^(n) = sum E(R)
    std::uint64_t partitions = 0;

    std::uint64_t c(unsigned k, unsigned n) const;
    BigInt C(unsigned k, unsigned n) const;
};

CkTable tabulate_ck(const SpecialXi& s);

/// c_k^{(n)}: xi-partitions of length 2p - k with b(P) = 2n.
std::uint64_t count_ckn(const SpecialXi& s, unsigned k, unsigned n);

/// (2p - 1)!! = (2p)! / (p! 2^p); (-1)!! = 1.
BigInt double_factorial_odd(unsigned p);

}  // namespace pacorr
