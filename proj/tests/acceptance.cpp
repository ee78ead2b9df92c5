// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance <id>...    run only the named criteria
//   acceptance --list     print the ids
//
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "pacorr/checks.hpp"
#include "pacorr/autocorr.hpp"
#include "pacorr/bounds.hpp"
#include "pacorr/evenseq.hpp"
#include "pacorr/experiments.hpp"
#include "pacorr/oracles.hpp"
#include "pacorr/sequence.hpp"
#include "pacorr/xi_partition.hpp"

#ifndef PACORR_CLI_PATH
#error "PACORR_CLI_PATH must point at the pacorr executable"
#endif

using namespace pacorr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

bool all_pass(const std::vector<LemmaReport>& rs, std::string& first_bad) {
    for (const auto& r : rs) {
        if (r.verdict != Verdict::pass) {
            first_bad = r.lemma + " " + params_cell(r.params) + " lhs=" + r.lhs + " rhs=" + r.rhs + " " +
                        std::string(to_string(r.verdict));
            return false;
        }
    }
    return true;
}

// Tolerances and sizes, pinned.
constexpr double kMomentIdentityBudgetS = 60;
constexpr double kEvenCountBudgetS = 60;
constexpr std::uint64_t kOnsetHi = 100000;
constexpr std::uint64_t kOnsetMaxM0 = 100;
constexpr double kOnsetBudgetS = 120;
constexpr double kCramerLo = 0.85, kCramerHi = 1.15;
constexpr std::size_t kConcentrationM = 1009;
constexpr std::uint64_t kConcentrationSamples = 5000;
constexpr std::uint64_t kConcentrationSeed = 20240601;
constexpr double kOracleAgreement = 0.03;
constexpr double kSigmas = 3;
constexpr double kUpperEps = 0.1;
constexpr double kUpperEpsMaxP = 0.01;
constexpr double kConcentrationBudgetS = 180;
constexpr std::uint64_t kTrendSamples = 1000;
constexpr std::uint64_t kTrendSeed = 20240602;
constexpr std::size_t kKernelCases = 100;
constexpr std::size_t kKernelMaxM = 2003;
constexpr double kSpectrumBudgetMs = 50;
constexpr std::size_t kBridgeM = 499;
constexpr std::uint64_t kBridgeSamples = 10000;

Outcome moment_identity() {
    const auto t0 = Clock::now();
    struct Case {
        std::size_t m, a, b;
        unsigned p;
    };
    std::vector<LemmaReport> rs;
    for (auto c : {Case{5, 1, 2, 1}, Case{7, 1, 3, 1}, Case{7, 2, 3, 1}, Case{5, 1, 2, 2}}) {
        rs.push_back(check_moment_identity(c.m, c.a, c.b, c.p));
    }
    const double secs = seconds_since(t0);
    std::string bad;
    const bool ok = all_pass(rs, bad);
    std::string values;
    for (const auto& r : rs) values += (values.empty() ? "" : ", ") + r.lhs + "=" + r.rhs;
    return {ok && secs < kMomentIdentityBudgetS,
            (ok ? "4/4 exact equalities (" + values + ")" : bad) + ", " + fmt(secs, 3) + " s"};
}

Outcome scaling_invariance() {
    std::vector<LemmaReport> rs;
    for (std::size_t m : {3u, 5u, 7u}) {
        for (std::size_t n = 1; n <= 4; ++n) rs.push_back(check_scaling_invariance(m, n));
    }
    std::string bad;
    const bool ok = all_pass(rs, bad);
    return {ok, ok ? "zero violations over m in {3,5,7}, n <= 4" : bad};
}

Outcome even_count_bound() {
    const auto t0 = Clock::now();
    std::vector<LemmaReport> rs;
    for (std::size_t m : {3u, 5u, 7u}) {
        for (std::size_t n = 2; n <= 4; ++n) rs.push_back(check_even_count_bound(m, n));
    }
    const double secs = seconds_since(t0);
    std::string bad;
    const bool ok = all_pass(rs, bad);
    return {ok && secs < kEvenCountBudgetS,
            (ok ? std::string("zero violations over m in {3,5,7}, n in {2,3,4}") : bad) + ", " + fmt(secs, 3) + " s"};
}

Outcome partition_layer() {
    const std::vector<std::string> wanted{"c00", "pair-block-E", "b-even", "length-bound", "partition-sum"};
    std::size_t partitions = 0;
    for (const SpecialXi s : {SpecialXi{7, 1, 2, 1}, SpecialXi{11, 1, 3, 1}, SpecialXi{13, 1, 4, 1}}) {
        if (!premises(s).all()) return {false, "premises unmet for m=" + std::to_string(s.m)};
        partitions += enumerate_xi_partitions(s).size();
        std::vector<LemmaReport> rs;
        for (auto& r : check_partition_layer(s)) {
            if (std::find(wanted.begin(), wanted.end(), r.lemma) != wanted.end()) rs.push_back(std::move(r));
        }
        if (rs.size() != wanted.size()) return {false, "missing report at m=" + std::to_string(s.m)};
        std::string bad;
        if (!all_pass(rs, bad)) return {false, bad};
    }
    return {true, "p=1 at (m,a,b) in {(7,1,2),(11,1,3),(13,1,4)}: " + std::to_string(partitions) +
                      " partitions, c00, pair-block E, even b(P), length bound, partition sum all exact"};
}

Outcome exact_pmf() {
    std::size_t pmf_checks = 0, subsets = 0;
    for (std::size_t m : {3u, 5u, 7u, 11u, 13u}) {
        const auto law = exact_pmf_cu(m);
        for (std::size_t u = 1; u < m; ++u) {
            if (!(enumerate_pmf_cu(m, u) == law)) return {false, "pmf mismatch at m=" + std::to_string(m)};
            ++pmf_checks;
            IndependencePlan plan;
            plan.max_exhaustive_size = 3;
            plan.include_full_set = true;
            plan.random_subsets = 1000;
            const auto rep = verify_independence(m, u, plan);
            if (!rep.independent()) {
                return {false, "independence violated at m=" + std::to_string(m) + " u=" + std::to_string(u)};
            }
            subsets += rep.subsets_tested;
        }
    }
    const auto counter = verify_independence(4, 2);
    if (counter.independent()) return {false, "m=4, u=2 counterexample not found"};
    return {true, std::to_string(pmf_checks) + " (m,u) laws exact; independence holds over " + std::to_string(subsets) +
                      " subsets; m=4 u=2 violation found (" + std::to_string(counter.violation_count) + " patterns)"};
}

Outcome single_shift_onset() {
    const auto t0 = Clock::now();
    const auto scan = scan_single_shift_onset(3, kOnsetHi);
    const double secs = seconds_since(t0);
    const bool ok = scan.onset && *scan.onset <= kOnsetMaxM0 && secs < kOnsetBudgetS;
    std::string d = "measured m0 = " + (scan.onset ? std::to_string(*scan.onset) : std::string("none")) +
                    " (required <= " + std::to_string(kOnsetMaxM0) + "); " + std::to_string(scan.violations.size()) +
                    " violating primes of " + std::to_string(scan.primes_checked);
    if (scan.last_violation()) {
        const auto& v = scan.violations.back();
        d += ", last at m=" + std::to_string(v.m) + " (tail " + fmt(static_cast<double>(v.tail), 8) + " < bound " +
             fmt(static_cast<double>(v.bound), 8) + ")";
    }
    return {ok, d + ", " + fmt(secs, 3) + " s"};
}

Outcome cramer() {
    auto ratio = [](std::uint64_t k) {
        return static_cast<double>(cramer_ratio(k, sqrtl(2 * logl(static_cast<long double>(k)))));
    };
    const double r3 = ratio(1000), r4 = ratio(10000), r5 = ratio(100000);
    const bool in_band = r4 >= kCramerLo && r4 <= kCramerHi;
    const bool shrinks = std::abs(r5 - 1) < std::abs(r3 - 1);
    return {in_band && shrinks,
            "ratio(1e3)=" + fmt(r3, 8) + " ratio(1e4)=" + fmt(r4, 8) + " ratio(1e5)=" + fmt(r5, 8)};
}

Outcome concentration() {
    const auto t0 = Clock::now();
    ExperimentConfig cfg;
    cfg.m_list = {kConcentrationM};
    cfg.samples = kConcentrationSamples;
    cfg.master_seed = kConcentrationSeed;
    cfg.epsilon = kUpperEps;
    const auto r = concentration_run(cfg).front();
    const double secs = seconds_since(t0);
    const auto m = static_cast<double>(kConcentrationM);
    const double oracle_norm = oracle_expected_max(kConcentrationM) / std::sqrt(m * std::log(m));
    const double n = static_cast<double>(r.samples);

    const bool i = std::abs(r.normalized_mean - oracle_norm) <= kOracleAgreement;
    const double sd = std::sqrt(r.p_exceed_lambda * (1 - r.p_exceed_lambda) / n);
    const double lower = static_cast<double>(bonferroni_lower(kConcentrationM));
    const bool ii = r.p_exceed_lambda - kSigmas * sd >= lower;
    const bool iii = r.p_above_eps <= kUpperEpsMaxP;
    // Independence approximation for the one-sided exceedance, for the record.
    const double q = static_cast<double>(
        cu_abs_tail(kConcentrationM, std::nextafter((1 + kUpperEps) * static_cast<double>(lambda_m(kConcentrationM)), 1e9)));
    const double predicted = -std::expm1(static_cast<double>((kConcentrationM - 1) / 2) * std::log1p(-q));

    std::string d = "(i) " + std::string(i ? "ok" : "FAIL") + " normalized_mean=" + fmt(r.normalized_mean, 8) +
                    " oracle=" + fmt(oracle_norm, 8) + "; (ii) " + (ii ? "ok" : "FAIL") +
                    " P(C>=lambda)=" + fmt(r.p_exceed_lambda) + " -3sd=" + fmt(r.p_exceed_lambda - kSigmas * sd) +
                    " bound=" + fmt(lower) + "; (iii) " + (iii ? "ok" : "FAIL") +
                    " P(C/lambda>1.1)=" + fmt(r.p_above_eps) + " (required <= " + fmt(kUpperEpsMaxP) +
                    ", oracle " + fmt(predicted) + "); " + fmt(secs, 3) + " s";
    return {i && ii && iii && secs < kConcentrationBudgetS, d};
}

Outcome trend() {
    ExperimentConfig cfg;
    cfg.m_list = {101, 1009, 10007, 100003};
    cfg.samples = kTrendSamples;
    cfg.master_seed = kTrendSeed;
    const auto rs = mc_expectation(cfg);
    bool ok = true;
    std::string d;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        ok = ok && rs[i].normalized_mean < std::sqrt(2.0);
        if (i > 0) ok = ok && rs[i].normalized_mean > rs[i - 1].normalized_mean;
        d += (i ? ", " : "") + std::to_string(rs[i].m) + ":" + fmt(rs[i].normalized_mean, 6) + " (oracle " +
             fmt(*rs[i].oracle_mean / std::sqrt(rs[i].m * std::log(static_cast<double>(rs[i].m))), 6) + ")";
    }
    return {ok, d + "; sqrt2=1.41421"};
}

Outcome kernel() {
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < kKernelCases; ++i) {
        RngStream stream(777, i);
        const std::size_t m = 2 + static_cast<std::size_t>(stream.next_word() % (kKernelMaxM - 1));
        const auto s = sample_uniform(m, stream);
        if (full_spectrum(s).values != reference::full_spectrum(s).values) ++mismatches;
    }
    RngStream stream(778, 0);
    const auto big = sample_uniform(10007, stream);
    std::vector<double> ms;
    std::int64_t sink = 0;
    for (int rep = 0; rep < 5; ++rep) {
        const auto t0 = Clock::now();
        sink += full_spectrum(big).max_nontrivial;
        ms.push_back(seconds_since(t0) * 1e3);
    }
    std::sort(ms.begin(), ms.end());
    const double median = ms[ms.size() / 2];
    return {mismatches == 0 && median < kSpectrumBudgetMs,
            std::to_string(mismatches) + " mismatches over " + std::to_string(kKernelCases) +
                " cases; m=10007 spectrum median " + fmt(median, 3) + " ms (min " + fmt(ms.front(), 3) +
                " ms), C=" + std::to_string(sink / 5)};
}

Outcome bridge() {
    std::uint64_t violations = 0;
    std::int64_t worst = 0;
    for (std::uint64_t i = 0; i < kBridgeSamples; ++i) {
        RngStream stream(4242, i);
        const auto s = sample_uniform(kBridgeM, stream);
        const auto full = full_spectrum(s);
        const auto trunc = truncated_spectrum(s);
        std::int64_t gap = 0;
        for (std::size_t u = 1; u < kBridgeM; ++u) gap = std::max<std::int64_t>(gap, std::llabs(full.values[u] - trunc[u]));
        worst = std::max(worst, gap);
        violations += gap > 2 ? 1 : 0;
    }
    return {violations == 0,
            std::to_string(violations) + " violations over " + std::to_string(kBridgeSamples) +
                " sequences, max_u |C_u - C'_u| = " + std::to_string(worst)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path() / ("pacorr_det_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::vector<std::string> invocations{
        "mc --m 1009 --samples 100 --seed 7",
        "concentration --m-list 101,1009 --samples 200 --seed 9 --epsilon 0.2",
        "composite-scan --m-list 1000,1024 --samples 150 --seed 11",
        "mc --m 5003 --samples 30 --seed 5 --format json",
    };
    std::size_t compared = 0;
    for (std::size_t k = 0; k < invocations.size(); ++k) {
        std::string first;
        for (int workers : {1, 8}) {
            for (int rep = 0; rep < 2; ++rep) {
                const auto out = dir / ("run_" + std::to_string(k) + "_" + std::to_string(workers) + "_" +
                                        std::to_string(rep));
                const std::string cmd = std::string("\"") + PACORR_CLI_PATH + "\" " + invocations[k] +
                                        " --workers " + std::to_string(workers) + " --out \"" + out.string() +
                                        "\" 2>/dev/null";
                if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + invocations[k]};
                const auto bytes = slurp(out);
                if (bytes.empty()) return {false, "empty output: " + invocations[k]};
                if (first.empty()) {
                    first = bytes;
                } else if (bytes != first) {
                    return {false, "output differs for '" + invocations[k] + "' at workers=" + std::to_string(workers)};
                }
                ++compared;
            }
        }
    }
    std::filesystem::remove_all(dir);
    return {true, std::to_string(invocations.size()) + " MC invocations x {workers 1, 8} x 2 reruns: " +
                      std::to_string(compared) + " byte-identical outputs"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"moment-identity", "moment identity sum_S (C_a C_b)^{2p} / 2^m = E(xi)", moment_identity},
        {"scaling-invariance", "E(xi) invariant under scaling and permutation", scaling_invariance},
        {"even-count-bound", "E(xi) <= 2^{n-2} (n-1)! m", even_count_bound},
        {"partition-layer", "xi-partition structure for p = 1", partition_layer},
        {"exact-pmf", "exact law of C_u and independence of X_{x,u}", exact_pmf},
        {"single-shift-onset", "P(|C_u| >= lambda_m) >= 1/(2m sqrt(ln m)) on [m0, 1e5], m0 <= 100", single_shift_onset},
        {"cramer", "binomial / Gaussian tail ratio", cramer},
        {"concentration", "concentration at m = 1009", concentration},
        {"trend", "normalized mean increasing and below sqrt 2", trend},
        {"kernel", "bit-sliced kernel equivalence and speed", kernel},
        {"bridge", "max_u |C_u - C'_u| <= 2", bridge},
        {"determinism", "MC output independent of reruns and workers", determinism},
    };

    std::vector<std::string> selected(argv + 1, argv + argc);
    if (selected.size() == 1 && selected[0] == "--list") {
        for (const auto& c : criteria) std::cout << c.id << '\n';
        return 0;
    }
    for (const auto& s : selected) {
        if (std::none_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return c.id == s; })) {
            std::cerr << "unknown criterion: " << s << '\n';
            return 2;
        }
    }

    int failed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        ++ran;
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << ": " << c.title << " | " << o.detail << std::endl;
    }
    std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
