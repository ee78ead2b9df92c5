// pacorr: command-line front end.
//
// Exit codes: 0 success, 1 a verification reported FAIL, 2 usage error,
// 3 a parameter exceeds a named feasibility cap.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pacorr/checks.hpp"
#include "pacorr/autocorr.hpp"
#include "pacorr/bounds.hpp"
#include "pacorr/errors.hpp"
#include "pacorr/evenseq.hpp"
#include "pacorr/experiments.hpp"
#include "pacorr/numtheory.hpp"
#include "pacorr/oracles.hpp"
#include "pacorr/report.hpp"
#include "pacorr/sequence.hpp"
#include "pacorr/xi_partition.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pacorr;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFeasibility = 3;

struct Options {
    // shared
    int workers = 0;
    std::string out;
    std::string format = "csv";
    std::optional<std::size_t> cap_override;

    // sequences / moduli
    std::optional<std::size_t> m;
    std::vector<std::size_t> m_list;
    std::optional<std::uint64_t> primes_from;
    std::optional<std::uint64_t> primes_to;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    double epsilon = 0.1;
    std::string seq;
    std::string in;
    bool legendre = false;
    std::optional<std::size_t> u;
    bool no_oracle = false;
    std::string hist_out;

    // verification / bounds
    std::vector<std::size_t> xi;
    std::optional<std::size_t> a;
    std::optional<std::size_t> b;
    std::optional<unsigned> p;
    std::optional<std::size_t> n;
    std::vector<unsigned> N;
    unsigned sweep_max_N = 0;
    unsigned sweep_max_r = 0;
    std::optional<double> theta;
    std::optional<std::int64_t> theta1;
    std::optional<std::int64_t> theta2;
    std::optional<std::uint64_t> k;
    double tolerance = 0.15;
    std::size_t random_subsets = 1000;
    std::size_t max_subset_size = 3;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t cap_of(const Options& o) { return o.cap_override.value_or(kExhaustiveMaxLength); }

template <typename T>
T need(const std::optional<T>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

// Writes to --out, or stdout when it is empty.
void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + o.out);
    f << text;
    if (!f) throw std::runtime_error("failed writing " + o.out);
}

void log_config(const json& cfg) { std::cerr << "# config " << cfg.dump() << '\n'; }

std::vector<std::size_t> resolve_m_list(const Options& o, bool defaults) {
    std::vector<std::size_t> ms = o.m_list;
    if (o.m) ms.insert(ms.begin(), *o.m);
    if (o.primes_from || o.primes_to) {
        const auto lo = need(o.primes_from, "--primes-from");
        const auto hi = need(o.primes_to, "--primes-to");
        for (auto q : primes_in_range(lo, hi)) ms.push_back(static_cast<std::size_t>(q));
    }
    if (ms.empty() && defaults) {
        for (std::uint64_t x : {101ULL, 499ULL, 1009ULL, 4999ULL, 10007ULL, 100003ULL}) {
            ms.push_back(static_cast<std::size_t>(next_prime(x)));
        }
    }
    if (ms.empty()) throw UsageError("no modulus given (use --m, --m-list or --primes-from/--primes-to)");
    return ms;
}

std::vector<BinarySequence> load_sequences(const Options& o) {
    std::vector<BinarySequence> seqs;
    if (!o.seq.empty()) seqs.push_back(BinarySequence::parse(o.seq));
    if (!o.in.empty()) {
        std::ifstream f(o.in);
        if (!f) throw std::runtime_error("cannot open input file " + o.in);
        for (auto& s : read_sequences(f)) seqs.push_back(std::move(s));
    }
    if (o.legendre) seqs.push_back(legendre_sequence(need(o.m, "--m")));
    if (seqs.empty() && o.m && o.seed) {
        RngStream stream(*o.seed, 0);
        seqs.push_back(sample_uniform(*o.m, stream));
    }
    if (seqs.empty()) throw UsageError("no sequence given (use --seq, --in, --legendre --m, or --m with --seed)");
    return seqs;
}

std::string reports_text(const Options& o, const json& cfg, const std::vector<LemmaReport>& rs) {
    if (o.format == "json") {
        json j;
        j["config"] = cfg;
        j["reports"] = to_json(rs);
        return j.dump(2) + "\n";
    }
    std::ostringstream s;
    s << "lemma,params,lhs,rhs,verdict\n";
    for (const auto& r : rs) {
        s << r.lemma << ',' << params_cell(r.params) << ',' << r.lhs << ',' << r.rhs << ',' << to_string(r.verdict)
          << '\n';
    }
    return s.str();
}

int finish_reports(const Options& o, const json& cfg, const std::vector<LemmaReport>& rs) {
    log_config(cfg);
    emit(o, reports_text(o, cfg, rs));
    for (const auto& r : rs) std::cerr << r.lemma << ' ' << params_cell(r.params) << ": " << to_string(r.verdict) << '\n';
    return any_failed(rs) ? kExitFail : kExitOk;
}

// ---- subcommands -----------------------------------------------------------

int cmd_autocorr(const Options& o) {
    const auto seqs = load_sequences(o);
    const std::size_t u = need(o.u, "--u");
    json cfg = {{"command", "autocorr"}, {"u", u}, {"sequences", seqs.size()}};
    if (o.seed) cfg["seed"] = *o.seed;
    log_config(cfg);
    std::ostringstream s;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& q : seqs) {
            arr.push_back({{"m", q.length()},
                           {"u", u},
                           {"periodic", periodic_autocorrelation(q, u)},
                           {"aperiodic", aperiodic_autocorrelation(q, u)}});
        }
        s << arr.dump(2) << '\n';
    } else {
        s << "seq,m,u,periodic,aperiodic\n";
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            s << i << ',' << seqs[i].length() << ',' << u << ',' << periodic_autocorrelation(seqs[i], u) << ','
              << aperiodic_autocorrelation(seqs[i], u) << '\n';
        }
    }
    emit(o, s.str());
    return kExitOk;
}

int cmd_spectrum(const Options& o) {
    const auto seqs = load_sequences(o);
    json cfg = {{"command", "spectrum"}, {"sequences", seqs.size()}};
    if (o.seed) cfg["seed"] = *o.seed;
    log_config(cfg);
    std::ostringstream s;
    json arr = json::array();
    if (o.format != "json") s << "seq,u,C_u,C_trunc_u\n";
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        const auto spec = full_spectrum(seqs[i]);
        const bool has_trunc = seqs[i].length() >= 3;
        const auto trunc = has_trunc ? truncated_spectrum(seqs[i]) : std::vector<std::int64_t>{};
        std::int64_t trunc_max = 0;
        for (std::size_t u = 1; u < trunc.size(); ++u) trunc_max = std::max<std::int64_t>(trunc_max, std::llabs(trunc[u]));
        if (o.format == "json") {
            json j = {{"m", spec.m}, {"values", spec.values}, {"max_nontrivial", spec.max_nontrivial}};
            j["truncated_max"] = has_trunc ? json(trunc_max) : json();
            arr.push_back(j);
        } else {
            for (std::size_t u = 0; u < spec.m; ++u) {
                s << i << ',' << u << ',' << spec.values[u] << ',';
                if (has_trunc && u != 0) s << trunc[u];
                s << '\n';
            }
        }
        std::cerr << "seq " << i << ": m=" << spec.m << " C=" << spec.max_nontrivial;
        if (has_trunc) std::cerr << " C'=" << trunc_max;
        std::cerr << '\n';
    }
    if (o.format == "json") s << arr.dump(2) << '\n';
    emit(o, s.str());
    return kExitOk;
}

enum class McKind { expectation, concentration, composite };

int cmd_mc(const Options& o, McKind kind) {
    ExperimentConfig cfg;
    cfg.m_list = resolve_m_list(o, kind != McKind::composite);
    cfg.samples = need(o.samples, "--samples");
    cfg.master_seed = need(o.seed, "--seed");
    cfg.workers = o.workers;
    cfg.epsilon = o.epsilon;
    cfg.with_oracle = !o.no_oracle;
    cfg.keep_histogram = !o.hist_out.empty();
    cfg.validate();
    json jcfg = to_json(cfg, {})["config"];
    jcfg["command"] = kind == McKind::expectation ? "mc" : kind == McKind::concentration ? "concentration" : "composite-scan";
    log_config(jcfg);

    auto on_record = [&](const RunRecord& r) {
        std::cerr << "m=" << r.m << (r.is_prime ? " prime" : " composite") << " samples=" << r.samples
                  << " normalized_mean=" << fmt12(r.normalized_mean) << " p_exceed_lambda=" << fmt12(r.p_exceed_lambda)
                  << " p_outside_eps=" << fmt12(r.p_outside_eps) << " p_above_eps=" << fmt12(r.p_above_eps);
        if (r.oracle_mean) std::cerr << " oracle_mean(APPROX)=" << fmt12(*r.oracle_mean);
        std::cerr << '\n';
    };
    std::vector<RunRecord> records;
    switch (kind) {
        case McKind::expectation: records = mc_expectation(cfg, on_record); break;
        case McKind::concentration: records = concentration_run(cfg, on_record); break;
        case McKind::composite: records = composite_scan(cfg, on_record); break;
    }
    std::ostringstream s;
    if (o.format == "json") {
        s << to_json(cfg, records).dump(2) << '\n';
    } else {
        write_csv(s, records);
    }
    emit(o, s.str());
    if (!o.hist_out.empty()) {
        std::ofstream h(o.hist_out, std::ios::binary);
        if (!h) throw std::runtime_error("cannot open histogram file " + o.hist_out);
        write_histogram_csv(h, records);
    }
    return kExitOk;
}

int cmd_bounds(const Options& o) {
    const auto ms = resolve_m_list(o, false);
    const std::size_t u = o.a.value_or(1), v = o.b.value_or(2);
    json cfg = {{"command", "bounds"}, {"m_list", ms}, {"epsilon", round12(o.epsilon)}, {"u", u}, {"v", v}};
    cfg["theta"] = o.theta ? json(*o.theta) : json();
    log_config(cfg);
    std::vector<BoundValue> rows;
    for (auto m : ms) {
        auto t = bound_table(m, o.epsilon, o.theta ? std::optional<long double>(*o.theta) : std::nullopt, u, v);
        rows.insert(rows.end(), t.begin(), t.end());
    }
    std::ostringstream s;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"name", r.name},
                           {"m", r.m},
                           {"params", r.params},
                           {"value", round12(static_cast<double>(r.value))},
                           {"premise_met", r.premise_met}});
        }
        s << arr.dump(2) << '\n';
    } else {
        s << "name,m,params,value,premise_met\n";
        for (const auto& r : rows) {
            s << r.name << ',' << r.m << ',' << params_cell(r.params) << ',' << fmt12(static_cast<double>(r.value))
              << ',' << (r.premise_met ? "true" : "false") << '\n';
        }
    }
    emit(o, s.str());
    return kExitOk;
}

XiSequence xi_from(const Options& o) {
    if (o.xi.empty()) throw UsageError("missing required flag --xi");
    return XiSequence::make(need(o.m, "--m"), o.xi);
}

SpecialXi special_from(const Options& o) {
    return SpecialXi{need(o.m, "--m"), need(o.a, "--a"), need(o.b, "--b"), need(o.p, "--p")};
}

int cmd_evenseq_count(const Options& o) {
    const XiSequence xi = xi_from(o);
    log_config({{"command", "evenseq count"}, {"m", xi.m}, {"xi", xi.entries}});
    const std::uint64_t e = count_xi_even(xi);
    if (o.format == "json") {
        emit(o, json({{"m", xi.m}, {"xi", xi.entries}, {"E", e}}).dump(2) + "\n");
    } else {
        emit(o, std::to_string(e) + "\n");
    }
    return kExitOk;
}

int cmd_evenseq_canon(const Options& o) {
    const XiSequence xi = xi_from(o);
    log_config({{"command", "evenseq canon"}, {"m", xi.m}, {"xi", xi.entries}});
    const XiSequence c = canonicalize(xi);
    if (o.format == "json") {
        emit(o, json({{"m", c.m}, {"xi", xi.entries}, {"canonical", c.entries}}).dump(2) + "\n");
    } else {
        std::string s;
        for (std::size_t i = 0; i < c.n(); ++i) s += (i ? "," : "") + std::to_string(c.entries[i]);
        emit(o, s + "\n");
    }
    return kExitOk;
}

std::string blocks_cell(const std::vector<std::uint32_t>& blocks) {
    std::string s;
    for (auto blk : blocks) {
        s += '{';
        bool first = true;
        for (unsigned i = 0; i < 32; ++i) {
            if ((blk >> i) & 1u) {
                if (!first) s += ' ';
                s += std::to_string(i + 1);
                first = false;
            }
        }
        s += '}';
    }
    return s;
}

int cmd_evenseq_partitions(const Options& o) {
    const SpecialXi sx = special_from(o);
    log_config({{"command", "evenseq partitions"}, {"m", sx.m}, {"a", sx.a}, {"b", sx.b}, {"p", sx.p}});
    const auto table = special_block_counts(sx);
    std::ostringstream s;
    json arr = json::array();
    if (o.format != "json") s << "blocks,length,b_count,E\n";
    std::uint64_t count = 0;
    for_each_xi_partition(sx, [&](const XiPartition& part) {
        BigInt e = 1;
        for (auto t : part.types) e *= table[t.j][t.k];
        ++count;
        if (o.format == "json") {
            arr.push_back({{"blocks", blocks_cell(part.blocks)},
                           {"length", part.length()},
                           {"b_count", part.b_count},
                           {"E", to_decimal(e)}});
        } else {
            s << blocks_cell(part.blocks) << ',' << part.length() << ',' << part.b_count << ',' << to_decimal(e) << '\n';
        }
    });
    if (o.format == "json") s << arr.dump(2) << '\n';
    std::cerr << count << " xi-partitions\n";
    emit(o, s.str());
    return kExitOk;
}

// ---- verify ----------------------------------------------------------------

int verify_moment_identity(const Options& o) {
    const auto m = need(o.m, "--m");
    const auto a = need(o.a, "--a");
    const auto b = need(o.b, "--b");
    const auto p = need(o.p, "--p");
    json cfg = {{"command", "verify moment-identity"}, {"m", m}, {"a", a}, {"b", b}, {"p", p}, {"cap", cap_of(o)}};
    std::vector<LemmaReport> rs{check_moment_identity(m, a, b, p, cap_of(o), o.workers)};
    if (o.theta1 || o.theta2) {
        rs.push_back(check_markov_step(m, a, b, p, need(o.theta1, "--theta1"), need(o.theta2, "--theta2"), cap_of(o),
                                       o.workers));
    }
    return finish_reports(o, cfg, rs);
}

std::vector<std::size_t> n_range(const Options& o, std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> ns;
    if (o.n) {
        ns.push_back(*o.n);
    } else {
        for (std::size_t i = lo; i <= hi; ++i) ns.push_back(i);
    }
    return ns;
}

int verify_scaling(const Options& o) {
    const auto ms = resolve_m_list(o, false);
    std::vector<LemmaReport> rs;
    for (auto m : ms) {
        for (auto n : n_range(o, 1, 4)) rs.push_back(check_scaling_invariance(m, n, o.workers));
    }
    return finish_reports(o, {{"command", "verify scaling-invariance"}, {"m_list", ms}}, rs);
}

int verify_even_subset(const Options& o) {
    const auto ms = resolve_m_list(o, false);
    std::vector<LemmaReport> rs;
    for (auto m : ms) {
        for (auto n : n_range(o, 1, 5)) rs.push_back(check_even_implies_subset(m, n));
    }
    return finish_reports(o, {{"command", "verify even-implies-subset"}, {"m_list", ms}}, rs);
}

int verify_even_count(const Options& o) {
    const auto ms = resolve_m_list(o, false);
    std::vector<LemmaReport> rs;
    for (auto m : ms) {
        for (auto n : n_range(o, 2, 4)) rs.push_back(check_even_count_bound(m, n));
    }
    return finish_reports(o, {{"command", "verify even-count-bound"}, {"m_list", ms}}, rs);
}

int verify_factorial(const Options& o) {
    std::vector<LemmaReport> rs;
    json cfg = {{"command", "verify factorial-product"}};
    if (!o.N.empty()) {
        rs.push_back(check_factorial_product(o.N));
        cfg["N"] = o.N;
    }
    if (o.sweep_max_N > 0) {
        rs.push_back(check_factorial_product_sweep(o.sweep_max_N, std::max(1u, o.sweep_max_r)));
        cfg["sweep_max_N"] = o.sweep_max_N;
        cfg["sweep_max_r"] = std::max(1u, o.sweep_max_r);
    }
    if (rs.empty()) throw UsageError("give --N or --sweep-max-N");
    return finish_reports(o, cfg, rs);
}

int verify_partitions(const Options& o) {
    const SpecialXi s = special_from(o);
    auto rs = check_partition_layer(s);
    return finish_reports(o, {{"command", "verify partitions"}, {"m", s.m}, {"a", s.a}, {"b", s.b}, {"p", s.p}}, rs);
}

int verify_ck(const Options& o) {
    const SpecialXi s = special_from(o);
    auto rs = check_ck_bounds(s);
    return finish_reports(o, {{"command", "verify ck-bounds"}, {"m", s.m}, {"a", s.a}, {"b", s.b}, {"p", s.p}}, rs);
}

int verify_moment_bound(const Options& o) {
    const auto m = need(o.m, "--m");
    const auto a = need(o.a, "--a");
    const auto b = need(o.b, "--b");
    std::vector<LemmaReport> rs{check_moment_bound(m, a, b, cap_of(o), o.workers)};
    return finish_reports(o, {{"command", "verify moment-bound"}, {"m", m}, {"a", a}, {"b", b}, {"cap", cap_of(o)}}, rs);
}

int verify_double_factorial(const Options& o) {
    const unsigned pmax = o.p.value_or(10);
    std::vector<LemmaReport> rs;
    for (unsigned p = 0; p <= pmax; ++p) rs.push_back(check_double_factorial(p));
    return finish_reports(o, {{"command", "verify double-factorial"}, {"p_max", pmax}}, rs);
}

int verify_independence(const Options& o) {
    const auto m = need(o.m, "--m");
    const auto u = need(o.u, "--u");
    IndependencePlan plan;
    plan.random_subsets = o.random_subsets;
    plan.max_exhaustive_size = o.max_subset_size;
    if (o.seed) plan.seed = *o.seed;
    const auto rep = verify_independence(m, u, plan, cap_of(o), o.workers);
    json cfg = {{"command", "verify independence"}, {"m", m}, {"u", u}, {"cap", cap_of(o)}};
    log_config(cfg);
    // For prime m independence is the claim; for composite m a violation is the expected finding.
    const bool expected_independent = is_prime(m);
    LemmaReport r;
    r.lemma = "independence";
    r.params = {{"m", m}, {"u", u}};
    r.lhs = std::to_string(rep.violation_count);
    r.rhs = "0";
    r.verdict = expected_independent ? (rep.independent() ? Verdict::pass : Verdict::fail) : Verdict::premise_unmet;
    r.extra = to_json(rep);
    std::vector<LemmaReport> rs{r};
    emit(o, reports_text(o, cfg, rs));
    std::cerr << "independence m=" << m << " u=" << u << ": " << rep.violation_count << " violations over "
              << rep.subsets_tested << " subsets: " << to_string(r.verdict) << '\n';
    return any_failed(rs) ? kExitFail : kExitOk;
}

int verify_pmf(const Options& o) {
    const auto ms = resolve_m_list(o, false);
    std::vector<LemmaReport> rs;
    for (auto m : ms) {
        const ExactPmf law = exact_pmf_cu(m);
        std::size_t mismatched = 0;
        for (std::size_t u = 1; u < m; ++u) {
            if (!(enumerate_pmf_cu(m, u, cap_of(o), o.workers) == law)) ++mismatched;
        }
        LemmaReport r;
        r.lemma = "exact-pmf";
        r.params = {{"m", m}};
        r.lhs = std::to_string(mismatched);
        r.rhs = "0";
        r.verdict = mismatched == 0 ? Verdict::pass : Verdict::fail;
        json support = json::array();
        for (const auto& [v, q] : law.support) support.push_back({{"value", v}, {"p", rational_to_json(q)}});
        r.extra["law"] = support;
        rs.push_back(r);
    }
    return finish_reports(o, {{"command", "verify pmf"}, {"m_list", ms}, {"cap", cap_of(o)}}, rs);
}

int verify_onset(const Options& o) {
    const std::uint64_t lo = o.primes_from.value_or(3), hi = o.primes_to.value_or(100000);
    const auto scan = scan_single_shift_onset(lo, hi, o.workers);
    LemmaReport r;
    r.lemma = "single-shift-tail-lower";
    r.params = {{"primes_from", lo}, {"primes_to", hi}};
    r.lhs = std::to_string(scan.violations.size());
    r.rhs = "0";
    r.verdict = scan.violations.empty() ? Verdict::pass : Verdict::fail;
    r.extra = to_json(scan);
    std::vector<LemmaReport> rs{r};
    const int code = finish_reports(o, {{"command", "verify single-shift-onset"}, {"primes_from", lo}, {"primes_to", hi}}, rs);
    std::cerr << "measured onset m0 = " << (scan.onset ? std::to_string(*scan.onset) : std::string("none")) << '\n';
    return code;
}

int verify_cramer(const Options& o) {
    const auto k = need(o.k, "--k");
    const double theta = o.theta.value_or(std::sqrt(2.0 * std::log(static_cast<double>(k))));
    const long double ratio = cramer_ratio(k, theta);
    LemmaReport r;
    r.lemma = "cramer-ratio";
    r.params = {{"k", k}, {"theta", theta}, {"tolerance", o.tolerance}};
    r.lhs = fmt12(static_cast<double>(ratio));
    r.rhs = "1";
    r.verdict = fabsl(ratio - 1) <= o.tolerance ? Verdict::pass : Verdict::fail;
    r.extra["tail"] = fmt12(static_cast<double>(binomial_abs_tail(k, theta * std::sqrt(static_cast<double>(k)))));
    r.extra["gaussian"] = fmt12(static_cast<double>(2 * normal_cdf_neg(theta)));
    return finish_reports(o, {{"command", "verify cramer"}, {"k", k}, {"theta", theta}}, {r});
}

int verify_bridge(const Options& o) {
    const auto m = need(o.m, "--m");
    const auto samples = need(o.samples, "--samples");
    const auto seed = need(o.seed, "--seed");
    if (m < 3) throw InvalidArgument("verify bridge: m must be >= 3");
    std::uint64_t violations = 0;
    std::int64_t worst = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        RngStream stream(seed, i);
        const auto s = sample_uniform(m, stream);
        const auto full = full_spectrum(s);
        const auto trunc = truncated_spectrum(s);
        std::int64_t gap = 0;
        for (std::size_t u = 1; u < m; ++u) gap = std::max<std::int64_t>(gap, std::llabs(full.values[u] - trunc[u]));
        worst = std::max(worst, gap);
        if (gap > 2) ++violations;
    }
    LemmaReport r;
    r.lemma = "truncation-gap";
    r.params = {{"m", m}, {"samples", samples}, {"seed", seed}};
    r.lhs = std::to_string(worst);
    r.rhs = "2";
    r.verdict = violations == 0 ? Verdict::pass : Verdict::fail;
    r.extra["violations"] = violations;
    return finish_reports(o, {{"command", "verify bridge"}, {"m", m}, {"samples", samples}, {"seed", seed}}, {r});
}

int verify_kernel(const Options& o) {
    const auto samples = need(o.samples, "--samples");
    const auto seed = need(o.seed, "--seed");
    const std::size_t max_m = o.m.value_or(2003);
    if (max_m < 2) throw InvalidArgument("verify kernel: --m must be >= 2");
    std::uint64_t mismatches = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        RngStream stream(seed, i);
        const std::size_t m = 2 + static_cast<std::size_t>(stream.next_word() % (max_m - 1));
        const auto s = sample_uniform(m, stream);
        if (full_spectrum(s).values != reference::full_spectrum(s).values) ++mismatches;
    }
    LemmaReport r;
    r.lemma = "kernel-equivalence";
    r.params = {{"max_m", max_m}, {"samples", samples}, {"seed", seed}};
    r.lhs = std::to_string(mismatches);
    r.rhs = "0";
    r.verdict = mismatches == 0 ? Verdict::pass : Verdict::fail;
    return finish_reports(o, {{"command", "verify kernel"}, {"max_m", max_m}, {"samples", samples}, {"seed", seed}}, {r});
}

// ---- option wiring ---------------------------------------------------------

void add_shared(CLI::App* c, Options& o) {
    c->add_option("--workers", o.workers, "Worker threads (default: available parallelism)")->check(CLI::NonNegativeNumber);
    c->add_option("--out", o.out, "Output file (default: stdout)");
    c->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--cap-override", o.cap_override, "Raise the exhaustive-enumeration length cap");
}

void add_moduli(CLI::App* c, Options& o) {
    c->add_option("--m", o.m, "Modulus / sequence length");
    c->add_option("--m-list", o.m_list, "Comma-separated moduli")->delimiter(',');
    c->add_option("--primes-from", o.primes_from, "Lower end of a prime range");
    c->add_option("--primes-to", o.primes_to, "Upper end of a prime range");
}

void add_sequence_source(CLI::App* c, Options& o) {
    c->add_option("--m", o.m, "Sequence length");
    c->add_option("--seq", o.seq, "Sequence as '+'/'-' characters");
    c->add_option("--in", o.in, "File with one '+'/'-' sequence per line");
    c->add_flag("--legendre", o.legendre, "Legendre sequence of prime length --m");
    c->add_option("--seed", o.seed, "Draw one uniform sequence of length --m from stream (seed, 0)");
}

void add_mc(CLI::App* c, Options& o) {
    add_moduli(c, o);
    c->add_option("--samples", o.samples, "Samples per modulus")->required();
    c->add_option("--seed", o.seed, "Master seed")->required();
    c->add_option("--epsilon", o.epsilon, "Concentration half-width");
    c->add_flag("--no-oracle", o.no_oracle, "Skip the independence-approximation oracle column");
    c->add_option("--hist-out", o.hist_out, "Also write the exact histogram of C as CSV");
}

void add_special(CLI::App* c, Options& o) {
    c->add_option("--m", o.m, "Prime modulus")->required();
    c->add_option("--a", o.a, "First shift a")->required();
    c->add_option("--b", o.b, "Second shift b")->required();
    c->add_option("--p", o.p, "Half-length p (xi has 2p copies of a and of b)")->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pacorr: periodic autocorrelation of binary sequences"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;
    auto bind = [&](CLI::App* c, std::function<int()> f) {
        add_shared(c, o);
        c->callback([&action, f] { action = f; });
    };

    auto* autocorr = app.add_subcommand("autocorr", "Periodic and aperiodic autocorrelation at one shift");
    add_sequence_source(autocorr, o);
    autocorr->add_option("--u", o.u, "Shift")->required();
    bind(autocorr, [&] { return cmd_autocorr(o); });

    auto* spectrum = app.add_subcommand("spectrum", "Full spectrum C_0..C_{m-1}, C(S) and C'(S)");
    add_sequence_source(spectrum, o);
    bind(spectrum, [&] { return cmd_spectrum(o); });

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E(C(S_m))");
    add_mc(mc, o);
    bind(mc, [&] { return cmd_mc(o, McKind::expectation); });

    auto* conc = app.add_subcommand("concentration", "Empirical P(|C/sqrt(2m ln m) - 1| > epsilon)");
    add_mc(conc, o);
    bind(conc, [&] { return cmd_mc(o, McKind::concentration); });

    auto* comp = app.add_subcommand("composite-scan", "Monte Carlo over arbitrary (composite) m");
    add_mc(comp, o);
    bind(comp, [&] { return cmd_mc(o, McKind::composite); });

    auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form bounds");
    add_moduli(bounds, o);
    bounds->add_option("--epsilon", o.epsilon, "Epsilon for the union bound");
    bounds->add_option("--theta", o.theta, "Deviation threshold for the bounded-differences bounds");
    bounds->add_option("--a", o.a, "Shift u for the pair premise (default 1)");
    bounds->add_option("--b", o.b, "Shift v for the pair premise (default 2)");
    bind(bounds, [&] { return cmd_bounds(o); });

    auto* even = app.add_subcommand("evenseq", "xi-even sequences and xi-partitions");
    even->require_subcommand(1);
    auto* count = even->add_subcommand("count", "E(xi)");
    count->add_option("--m", o.m, "Modulus")->required();
    count->add_option("--xi", o.xi, "Comma-separated entries")->delimiter(',')->required();
    bind(count, [&] { return cmd_evenseq_count(o); });
    auto* canon = even->add_subcommand("canon", "Canonical form under scaling and permutation");
    canon->add_option("--m", o.m, "Modulus")->required();
    canon->add_option("--xi", o.xi, "Comma-separated entries")->delimiter(',')->required();
    bind(canon, [&] { return cmd_evenseq_canon(o); });
    auto* parts = even->add_subcommand("partitions", "xi-partitions of the special xi with b(P) and E(P)");
    add_special(parts, o);
    bind(parts, [&] { return cmd_evenseq_partitions(o); });

    auto* verify = app.add_subcommand("verify", "Exact verification of identities and bounds");
    verify->require_subcommand(1);
    auto* v_moment = verify->add_subcommand("moment-identity", "Moment identity (and Markov step with --theta1/--theta2)");
    v_moment->alias("eq1");
    add_special(v_moment, o);
    v_moment->add_option("--theta1", o.theta1, "Threshold on |C_a|");
    v_moment->add_option("--theta2", o.theta2, "Threshold on |C_b|");
    bind(v_moment, [&] { return verify_moment_identity(o); });

    auto* v8 = verify->add_subcommand("scaling-invariance", "Scaling / permutation invariance of E(xi)");
    v8->alias("lemma8");
    add_moduli(v8, o);
    v8->add_option("--n", o.n, "Only this length (default 1..4)");
    bind(v8, [&] { return verify_scaling(o); });

    auto* v9 = verify->add_subcommand("even-implies-subset", "E(xi) > 0 implies the full index set is a xi-subset");
    v9->alias("lemma9");
    add_moduli(v9, o);
    v9->add_option("--n", o.n, "Only this length (default 1..5)");
    bind(v9, [&] { return verify_even_subset(o); });

    auto* v10 = verify->add_subcommand("even-count-bound", "E(xi) <= 2^{n-2} (n-1)! m");
    v10->alias("lemma10");
    add_moduli(v10, o);
    v10->add_option("--n", o.n, "Only this length (default 2..4)");
    bind(v10, [&] { return verify_even_count(o); });

    auto* v11 = verify->add_subcommand("factorial-product", "Factorial product inequality");
    v11->alias("lemma11");
    v11->add_option("--N", o.N, "Comma-separated N_1..N_r")->delimiter(',');
    v11->add_option("--sweep-max-N", o.sweep_max_N, "Sweep all N_i in [3, max]");
    v11->add_option("--sweep-max-r", o.sweep_max_r, "Sweep lengths r in [1, max]");
    bind(v11, [&] { return verify_factorial(o); });

    auto* vp = verify->add_subcommand("partitions", "Structure of the xi-partitions of the special xi");
    add_special(vp, o);
    bind(vp, [&] { return verify_partitions(o); });

    auto* vck = verify->add_subcommand("ck-bounds", "Bounds on the partition counts c_k^(n)");
    add_special(vck, o);
    bind(vck, [&] { return verify_ck(o); });

    auto* v14 = verify->add_subcommand("moment-bound", "E(xi) <= 2 (2p-1)!!^2 m^{2p} at p = floor(ln m)");
    v14->alias("prop14");
    v14->add_option("--m", o.m, "Prime modulus")->required();
    v14->add_option("--a", o.a, "First shift")->required();
    v14->add_option("--b", o.b, "Second shift")->required();
    bind(v14, [&] { return verify_moment_bound(o); });

    auto* vdf = verify->add_subcommand("double-factorial", "(2p-1)!! = (2p)!/(p! 2^p) for p <= --p");
    vdf->add_option("--p", o.p, "Largest p (default 10)");
    bind(vdf, [&] { return verify_double_factorial(o); });

    auto* vind = verify->add_subcommand("independence", "Mutual independence of X_{x,u}, x != 0");
    vind->add_option("--m", o.m, "Modulus")->required();
    vind->add_option("--u", o.u, "Shift")->required();
    vind->add_option("--random-subsets", o.random_subsets, "Random subsets beyond the exhaustive sizes");
    vind->add_option("--max-subset-size", o.max_subset_size, "All subsets up to this size");
    vind->add_option("--seed", o.seed, "Seed for the random subsets (default 1)");
    bind(vind, [&] { return verify_independence(o); });

    auto* vpmf = verify->add_subcommand("pmf", "Exact law of C_u against exhaustive enumeration");
    add_moduli(vpmf, o);
    bind(vpmf, [&] { return verify_pmf(o); });

    auto* v_onset = verify->add_subcommand("single-shift-onset", "P(|C_u| >= lambda_m) >= 1/(2m sqrt(ln m)) over a prime range");
    v_onset->alias("prop4-onset");
    v_onset->add_option("--primes-from", o.primes_from, "Default 3");
    v_onset->add_option("--primes-to", o.primes_to, "Default 100000");
    bind(v_onset, [&] { return verify_onset(o); });

    auto* vcr = verify->add_subcommand("cramer", "Binomial tail over the Gaussian tail");
    vcr->add_option("--k", o.k, "Number of +-1 summands")->required();
    vcr->add_option("--theta", o.theta, "Threshold (default sqrt(2 ln k))");
    vcr->add_option("--tolerance", o.tolerance, "Accepted |ratio - 1| (default 0.15)");
    bind(vcr, [&] { return verify_cramer(o); });

    auto* vbr = verify->add_subcommand("bridge", "max_u |C_u - C'_u| <= 2 on random sequences");
    vbr->add_option("--m", o.m, "Length")->required();
    vbr->add_option("--samples", o.samples, "Sequences")->required();
    vbr->add_option("--seed", o.seed, "Seed")->required();
    bind(vbr, [&] { return verify_bridge(o); });

    auto* vk = verify->add_subcommand("kernel", "Bit-sliced spectrum against the naive double loop");
    vk->add_option("--m", o.m, "Largest length (default 2003)");
    vk->add_option("--samples", o.samples, "Random cases")->required();
    vk->add_option("--seed", o.seed, "Seed")->required();
    bind(vk, [&] { return verify_kernel(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << " [" << e.cap() << "]\n";
        return kExitFeasibility;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
