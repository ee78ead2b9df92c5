#pragma once

// Monte Carlo harness for C(S_m) over uniform random sequences.
//
// Sample i at modulus m is drawn from RngStream(master_seed, mix64(m) ^ i),
// its statistic is stored by index, and all aggregates are formed serially
// from exact integer sums afterwards. Records therefore depend only on the
// config and seed, never on the worker count or the schedule.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pacorr/report.hpp"

namespace pacorr {

inline constexpr std::size_t kMaxExperimentLength = 1'000'000;

struct ExperimentConfig {
    std::vector<std::size_t> m_list;
    std::uint64_t samples = 0;
    std::uint64_t master_seed = 0;
    /// 0 = runtime default. Not part of the output.
    int workers = 0;
    double epsilon = 0.1;
    /// Fill oracle_mean for prime m.
    bool with_oracle = true;
    /// Keep the exact histogram of C per m.
    bool keep_histogram = false;

    /// samples >= 1, m_list non-empty, 3 <= m <= kMaxExperimentLength.
    void validate() const;
};

struct RunRecord {
    std::size_t m = 0;
    bool is_prime = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double mean_C = 0;
    double std_C = 0;
    /// mean_C / sqrt(m ln m)
    double normalized_mean = 0;
    /// std_C / sqrt(m ln m)
    double normalized_std = 0;
    double lambda_m = 0;
    /// Empirical P(C >= lambda_m).
    double p_exceed_lambda = 0;
    double epsilon = 0;
    /// Empirical P(|C / lambda_m - 1| > epsilon).
    double p_outside_eps = 0;
    /// Independence-approximation E(C) (APPROX; prime m only).
    std::optional<double> oracle_mean;

    /// Empirical one-sided P(C / lambda_m > 1 + epsilon).
    double p_above_eps = 0;
    std::uint64_t exceed_lambda_count = 0;
    std::uint64_t outside_eps_count = 0;
    std::uint64_t above_eps_count = 0;
    /// Samples whose folded spectrum was re-checked against the unfolded kernel.
    std::uint64_t spot_checked = 0;
    /// C -> count, when requested.
    std::map<std::int64_t, std::uint64_t> histogram;
};

/// C(S) for sample `index` at modulus m under the harness's stream layout.
std::int64_t sample_statistic(std::size_t m, std::uint64_t master_seed, std::uint64_t index);

/// One RunRecord per m in cfg.m_list, in order. on_record is called after each m.
std::vector<RunRecord> mc_expectation(const ExperimentConfig& cfg,
                                      const std::function<void(const RunRecord&)>& on_record = {});

/// mc_expectation restricted to the in-probability statistics; same records.
std::vector<RunRecord> concentration_run(const ExperimentConfig& cfg,
                                         const std::function<void(const RunRecord&)>& on_record = {});

/// mc_expectation over arbitrary m >= 4, composite allowed (exploratory).
std::vector<RunRecord> composite_scan(const ExperimentConfig& cfg,
                                      const std::function<void(const RunRecord&)>& on_record = {});

/// E[max of (m-1)/2 i.i.d. copies of |C_u|] with the exact single-shift law:
/// sum_{t >= 1} (1 - (1 - P(|C_u| >= t))^{(m-1)/2}). An approximation to
/// E(C(S_m)), not an identity. m odd prime, m <= kMaxExperimentLength.
double oracle_expected_max(std::size_t m);

/// Exact E(C(S_m)) by enumerating all 2^m sequences (small m only).
Rational exact_expected_max(std::size_t m, int workers = 0);

inline constexpr const char* kRunRecordCsvHeader =
    "m,is_prime,samples,seed,mean_C,std_C,normalized_mean,normalized_std,lambda_m,p_exceed_lambda,epsilon,p_outside_eps,"
    "oracle_mean";

/// Header plus one row per record; floats as %.12g, missing oracle_mean empty.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);

/// {"config": {...}, "records": [...]}: the CSV fields under the same names,
/// oracle_mean null when absent. The worker count is not written.
nlohmann::ordered_json to_json(const ExperimentConfig& cfg, const std::vector<RunRecord>& records);

/// Rows "m,C,count" over every record's histogram.
void write_histogram_csv(std::ostream& out, const std::vector<RunRecord>& records);

}  // namespace pacorr
