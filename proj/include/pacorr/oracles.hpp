#pragma once

// Exact small-scale ground truth over the uniform distribution on {-1,1}^m.
//
// Exhaustive routines enumerate all 2^m sequences as m-bit masks (bit i set
// means s_i = -1) and are therefore capped at kExhaustiveMaxLength, which
// callers may raise explicitly. Enumeration is split over OpenMP workers by
// mask prefix; every tally is an integer, so results do not depend on the
// worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pacorr/report.hpp"

namespace pacorr {

inline constexpr std::size_t kExhaustiveMaxLength = 22;
inline constexpr std::size_t kExactPmfMaxModulus = 4096;

/// Law of an integer random variable with exact rational masses.
struct ExactPmf {
    /// (value, probability), values strictly increasing.
    std::vector<std::pair<std::int64_t, Rational>> support;

    Rational total() const;
    Rational probability(std::int64_t value) const;
    /// P(|X| >= threshold) for a real threshold.
    Rational abs_tail(double threshold) const;
    Rational mean() const;

    friend bool operator==(const ExactPmf&, const ExactPmf&) = default;
};

/// Law of C_u(S_m), u != 0, for prime m (independent of u). With k the number
/// of -1's among the independent X_{x,u}, x != 0, C_u = (m-1-2k) + (-1)^k.
ExactPmf exact_pmf_cu(std::size_t m);

/// Law of C_u(S_m) by enumerating {-1,1}^m; any m >= 2, any u.
ExactPmf enumerate_pmf_cu(std::size_t m, std::size_t u, std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// Law of C(S_m) = max_{u != 0} |C_u| by enumeration.
ExactPmf enumerate_pmf_max(std::size_t m, std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// P(|C_u(S_m)| >= threshold) for prime m, from the binomial-parity law,
/// summed in long double from the boundary term outward. Good to ~1e-15
/// relative for m up to 1e7.
long double cu_abs_tail(std::size_t m, double threshold);

/// Exact rational version of cu_abs_tail (capped at kExactPmfMaxModulus).
Rational cu_abs_tail_exact(std::size_t m, double threshold);

/// Sampling plan for the independence check: every subset of
/// F_m^* up to max_exhaustive_size, the full set, and random_subsets
/// further random non-empty subsets drawn from RngStream(seed, 0).
struct IndependencePlan {
    std::size_t max_exhaustive_size = 3;
    bool include_full_set = true;
    std::size_t random_subsets = 1000;
    std::uint64_t seed = 1;
};

struct IndependenceViolation {
    std::vector<std::size_t> subset;  // elements x of F_m^*
    std::vector<int> pattern;         // b_x in {-1,+1}, aligned with subset
    std::uint64_t count = 0;          // sequences realising the pattern
    std::uint64_t expected = 0;       // 2^m / 2^{|E|}
};

struct IndependenceReport {
    std::size_t m = 0;
    std::size_t u = 0;
    IndependencePlan plan;
    std::size_t subsets_tested = 0;
    std::uint64_t patterns_tested = 0;
    std::uint64_t violation_count = 0;
    /// First few violations, in test order.
    std::vector<IndependenceViolation> violations;

    bool independent() const noexcept { return violation_count == 0; }
};

/// Checks P(X_{x,u} = b_x for all x in E) = 2^{-|E|} exactly for every subset
/// E in the plan and every sign pattern b. 2 <= m <= cap, u in F_m^*.
IndependenceReport verify_independence(std::size_t m, std::size_t u, const IndependencePlan& plan = {},
                                       std::size_t cap = kExhaustiveMaxLength, int workers = 0);

nlohmann::ordered_json to_json(const IndependenceReport& r);

struct JointMoment {
    BigInt sum;            ///< sum over all S of (C_a(S) C_b(S))^{2p}
    Rational expectation;  ///< sum / 2^m
};

/// Exact E[(C_a C_b)^{2p}] by enumeration; a, b in F_m^*, p >= 1.
JointMoment exact_joint_moment(std::size_t m, std::size_t a, std::size_t b, unsigned p,
                               std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// Exact E[prod_i C_{shifts[i]}] by enumeration (shifts may repeat or be 0).
Rational exact_shift_product_moment(std::size_t m, std::span<const std::size_t> shifts,
                                    std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// Predicate over the full spectrum (C_0, ..., C_{m-1}) of one sequence.
/// Called concurrently from several workers; must be pure.
using SpectrumPredicate = std::function<bool(std::span<const std::int64_t>)>;

/// Exact probability of a spectrum event under uniform S in {-1,1}^m.
Rational exact_event_probability(std::size_t m, const SpectrumPredicate& pred,
                                 std::size_t cap = kExhaustiveMaxLength, int workers = 0);

/// Runs the OpenMP team with `workers` threads, or the runtime default for 0.
int resolve_workers(int workers);

}  // namespace pacorr
