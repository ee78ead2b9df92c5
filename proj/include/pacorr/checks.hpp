#pragma once

// Exact checks of the xi-even / xi-partition inequalities. Every check
// evaluates both sides exactly and returns LemmaReports; a check whose
// standing assumptions fail at the given parameters still computes both
// sides but reports PREMISE_UNMET.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pacorr/evenseq.hpp"
#include "pacorr/oracles.hpp"
#include "pacorr/report.hpp"
#include "pacorr/xi_partition.hpp"

namespace pacorr {

/// sum_S (C_a C_b)^{2p} / 2^m == E(a x 2p, b x 2p).
LemmaReport check_moment_identity(std::size_t m, std::size_t a, std::size_t b, unsigned p,
                                  std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// P(|C_a| >= theta1 and |C_b| >= theta2) <= E(a x 2p, b x 2p) / (theta1 theta2)^{2p}.
LemmaReport check_markov_step(std::size_t m, std::size_t a, std::size_t b, unsigned p, std::int64_t theta1,
                              std::int64_t theta2, std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// E(c xi) == E(sigma xi) for every xi in F_m^n, every c in F_m^*, every
/// permutation sigma, with E by brute force per tuple. Also checks that
/// count_xi_even agrees on the canonical form. m prime.
LemmaReport check_scaling_invariance(std::size_t m, std::size_t n, int workers = 0);

/// E(xi) > 0 implies {1..n} is a xi-subset, over all xi in F_m^n.
LemmaReport check_even_implies_subset(std::size_t m, std::size_t n);

/// E(xi) <= 2^{n-2} (n-1)! m over all xi in (F_m^*)^n, n >= 2.
LemmaReport check_even_count_bound(std::size_t m, std::size_t n);

/// 2^r prod (N_i - 1)! <= 4 (sum N_i - (2r - 1))!, premise N_i > 2.
LemmaReport check_factorial_product(std::span<const unsigned> N);

/// All non-increasing (N_1..N_r), 3 <= N_i <= max_N, 1 <= r <= max_r.
LemmaReport check_factorial_product_sweep(unsigned max_N, unsigned max_r);

/// E(xi) <= sum over xi-partitions P of E(P), for any xi with n <= kPartitionMaxLength.
LemmaReport check_partition_sum(const XiSequence& xi);

/// The structural layer for the special xi: c_0^(0), C_0^(0), pair-block
/// E(P), parity of b(P), the length bound and its equality case, the E(P)
/// bound by length, block decompositions, the one-step split, vanishing of
/// c_k^(n), and E(xi) <= sum E(P).
std::vector<LemmaReport> check_partition_layer(const SpecialXi& s);

/// Upper bounds on c_k^(n) (three families) and on sum_{n<=e} c_k^(n).
std::vector<LemmaReport> check_ck_bounds(const SpecialXi& s);

/// E(xi) <= 2 (2p-1)!!^2 m^{2p} with p = floor(ln m), premise a + b < m / (2 ln m).
/// E(xi) from count_xi_even when feasible, else from the exhaustive joint moment
/// (bounded by `cap`).
LemmaReport check_moment_bound(std::size_t m, std::size_t a, std::size_t b, std::size_t cap = kExhaustiveMaxLength,
                               int workers = 0);

/// (2p-1)!! as an odd product equals (2p)! / (p! 2^p).
LemmaReport check_double_factorial(unsigned p);

}  // namespace pacorr
