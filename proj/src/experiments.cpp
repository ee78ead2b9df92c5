#include "pacorr/experiments.hpp"

#include <omp.h>

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "pacorr/autocorr.hpp"
#include "pacorr/bounds.hpp"
#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"
#include "pacorr/oracles.hpp"
#include "pacorr/sequence.hpp"

namespace pacorr {

namespace {

BinarySequence draw(std::size_t m, std::uint64_t master_seed, std::uint64_t index) {
    RngStream stream(master_seed, mix64(m) ^ index);
    return sample_uniform(m, stream);
}

// Roughly 1% of samples, chosen by a hash of (seed, m, index).
bool spot_check_selected(std::size_t m, std::uint64_t master_seed, std::uint64_t index) {
    return mix64(master_seed ^ mix64(m + mix64(index))) % 100 == 0;
}

void check_spectrum(const BinarySequence& s, const AutocorrSpectrum& spec) {
    const std::size_t m = s.length();
    const auto unfolded = unfolded_spectrum(s, Exec::serial);
    const auto mm = static_cast<std::int64_t>(m);
    for (std::size_t u = 0; u < m; ++u) {
        const std::int64_t v = spec.values[u];
        if (v != unfolded[u] || v != spec.values[(m - u) % m] || ((v - mm) % 2) != 0 || std::llabs(v) > mm) {
            throw std::logic_error("spectrum invariant violated at m = " + std::to_string(m) + ", u = " +
                                   std::to_string(u));
        }
    }
    if (spec.values[0] != mm) throw std::logic_error("spectrum invariant violated: C_0 != m");
}

RunRecord run_one(std::size_t m, const ExperimentConfig& cfg) {
    const std::uint64_t n = cfg.samples;
    std::vector<std::int64_t> stat(n);
    std::vector<std::uint8_t> checked(n, 0);
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_workers(cfg.workers))
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const BinarySequence s = draw(m, cfg.master_seed, idx);
        const AutocorrSpectrum spec = full_spectrum(s, Exec::serial);
        if (spot_check_selected(m, cfg.master_seed, idx)) {
            // Exceptions must not cross the parallel region; record and rethrow below.
            try {
                check_spectrum(s, spec);
                checked[idx] = 1;
            } catch (const std::logic_error&) {
                checked[idx] = 2;
            }
        }
        stat[idx] = spec.max_nontrivial;
    }

    for (std::uint64_t i = 0; i < n; ++i) {
        if (checked[i] == 2) {
            throw std::logic_error("spectrum invariant violated for sample " + std::to_string(i) + " at m = " +
                                   std::to_string(m));
        }
    }

    RunRecord r;
    r.m = m;
    r.is_prime = is_prime(m);
    r.samples = n;
    r.seed = cfg.master_seed;
    r.epsilon = cfg.epsilon;
    const long double lam = lambda_m(m);
    r.lambda_m = static_cast<double>(lam);

    std::int64_t sum = 0;
    __int128 sum_sq = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::int64_t c = stat[i];
        sum += c;
        sum_sq += static_cast<__int128>(c) * c;
        const long double ratio = static_cast<long double>(c) / lam;
        if (static_cast<long double>(c) >= lam) ++r.exceed_lambda_count;
        if (fabsl(ratio - 1) > cfg.epsilon) ++r.outside_eps_count;
        if (ratio > 1 + static_cast<long double>(cfg.epsilon)) ++r.above_eps_count;
        r.spot_checked += checked[i] != 0 ? 1 : 0;
        if (cfg.keep_histogram) ++r.histogram[c];
    }
    const auto nn = static_cast<long double>(n);
    const long double mean = static_cast<long double>(sum) / nn;
    long double var = 0;
    if (n > 1) {
        // n * sum_sq - sum^2 is exact in 128 bits for these ranges.
        const __int128 num = static_cast<__int128>(n) * sum_sq - static_cast<__int128>(sum) * sum;
        var = static_cast<long double>(num) / (nn * (nn - 1));
    }
    const long double scale = sqrtl(static_cast<long double>(m) * logl(static_cast<long double>(m)));
    r.mean_C = static_cast<double>(mean);
    r.std_C = static_cast<double>(sqrtl(var));
    r.normalized_mean = static_cast<double>(mean / scale);
    r.normalized_std = static_cast<double>(sqrtl(var) / scale);
    r.p_exceed_lambda = static_cast<double>(static_cast<long double>(r.exceed_lambda_count) / nn);
    r.p_outside_eps = static_cast<double>(static_cast<long double>(r.outside_eps_count) / nn);
    r.p_above_eps = static_cast<double>(static_cast<long double>(r.above_eps_count) / nn);
    if (cfg.with_oracle && r.is_prime && m % 2 == 1) r.oracle_mean = oracle_expected_max(m);
    return r;
}

std::vector<RunRecord> run_all(const ExperimentConfig& cfg, const std::function<void(const RunRecord&)>& on_record) {
    cfg.validate();
    std::vector<RunRecord> out;
    for (auto m : cfg.m_list) {
        out.push_back(run_one(m, cfg));
        if (on_record) on_record(out.back());
    }
    return out;
}

std::string float_cell(double v) { return fmt12(v); }

}  // namespace

void ExperimentConfig::validate() const {
    if (samples < 1) throw InvalidArgument("experiment: samples must be >= 1");
    if (m_list.empty()) throw InvalidArgument("experiment: m list is empty");
    for (auto m : m_list) {
        if (m < 3) throw InvalidArgument("experiment: every m must be >= 3 (got " + std::to_string(m) + ")");
        if (m > kMaxExperimentLength) {
            throw FeasibilityError("kMaxExperimentLength", "experiment: m = " + std::to_string(m));
        }
    }
    if (!(epsilon > 0)) throw InvalidArgument("experiment: epsilon must be positive");
}

std::int64_t sample_statistic(std::size_t m, std::uint64_t master_seed, std::uint64_t index) {
    return full_spectrum(draw(m, master_seed, index), Exec::serial).max_nontrivial;
}

std::vector<RunRecord> mc_expectation(const ExperimentConfig& cfg,
                                      const std::function<void(const RunRecord&)>& on_record) {
    return run_all(cfg, on_record);
}

std::vector<RunRecord> concentration_run(const ExperimentConfig& cfg,
                                         const std::function<void(const RunRecord&)>& on_record) {
    return run_all(cfg, on_record);
}

std::vector<RunRecord> composite_scan(const ExperimentConfig& cfg,
                                      const std::function<void(const RunRecord&)>& on_record) {
    for (auto m : cfg.m_list) {
        if (m < 4) throw InvalidArgument("composite_scan: every m must be >= 4");
    }
    return run_all(cfg, on_record);
}

double oracle_expected_max(std::size_t m) {
    if (m < 3 || m % 2 == 0 || !is_prime(m)) throw InvalidArgument("oracle_expected_max: m must be an odd prime");
    if (m > kMaxExperimentLength) throw FeasibilityError("kMaxExperimentLength", "oracle_expected_max: m too large");
    const auto n = static_cast<std::int64_t>(m - 1);
    const long double log_norm = lgammal(static_cast<long double>(n) + 1) - static_cast<long double>(n) * logl(2.0L);
    // P(|C_u| = v) for v = 0..m.
    std::vector<long double> mass(m + 1, 0.0L);
    for (std::int64_t k = 0; k <= n; ++k) {
        const std::int64_t c = n - 2 * k + (k % 2 == 0 ? 1 : -1);
        mass[static_cast<std::size_t>(std::llabs(c))] +=
            expl(log_norm - lgammal(static_cast<long double>(k) + 1) - lgammal(static_cast<long double>(n - k) + 1));
    }
    const auto copies = static_cast<long double>((m - 1) / 2);
    long double tail = 0, expected = 0;
    for (std::size_t t = m; t >= 1; --t) {
        tail += mass[t];  // P(|C_u| >= t)
        const long double q = tail >= 1 ? 1.0L : tail;
        expected += q >= 1 ? 1.0L : -expm1l(copies * log1pl(-q));
    }
    return static_cast<double>(expected);
}

Rational exact_expected_max(std::size_t m, int workers) { return enumerate_pmf_max(m, kExhaustiveMaxLength, workers).mean(); }

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kRunRecordCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.m << ',' << (r.is_prime ? "true" : "false") << ',' << r.samples << ',' << r.seed << ','
            << float_cell(r.mean_C) << ',' << float_cell(r.std_C) << ',' << float_cell(r.normalized_mean) << ','
            << float_cell(r.normalized_std) << ',' << float_cell(r.lambda_m) << ',' << float_cell(r.p_exceed_lambda)
            << ',' << float_cell(r.epsilon) << ',' << float_cell(r.p_outside_eps) << ','
            << (r.oracle_mean ? float_cell(*r.oracle_mean) : std::string()) << '\n';
    }
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
    using json = nlohmann::ordered_json;
    json j;
    j["config"] = {{"m_list", cfg.m_list},
                   {"samples", cfg.samples},
                   {"seed", cfg.master_seed},
                   {"epsilon", round12(cfg.epsilon)},
                   {"oracle", cfg.with_oracle}};
    json rows = json::array();
    for (const auto& r : records) {
        rows.push_back({{"m", r.m},
                        {"is_prime", r.is_prime},
                        {"samples", r.samples},
                        {"seed", r.seed},
                        {"mean_C", round12(r.mean_C)},
                        {"std_C", round12(r.std_C)},
                        {"normalized_mean", round12(r.normalized_mean)},
                        {"normalized_std", round12(r.normalized_std)},
                        {"lambda_m", round12(r.lambda_m)},
                        {"p_exceed_lambda", round12(r.p_exceed_lambda)},
                        {"epsilon", round12(r.epsilon)},
                        {"p_outside_eps", round12(r.p_outside_eps)},
                        {"oracle_mean", r.oracle_mean ? json(round12(*r.oracle_mean)) : json()}});
    }
    j["records"] = rows;
    return j;
}

void write_histogram_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << "m,C,count\n";
    for (const auto& r : records) {
        for (const auto& [c, count] : r.histogram) out << r.m << ',' << c << ',' << count << '\n';
    }
}

}  // namespace pacorr
