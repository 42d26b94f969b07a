#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "favard/common.hpp"
#include "favard/config.hpp"
#include "favard/exp_sums.hpp"
#include "favard/fourier.hpp"
#include "favard/parallel.hpp"
#include "favard/projection.hpp"
#include "favard/rng.hpp"
#include "favard/similarity.hpp"
#include "favard/tiling.hpp"
#include "favard/trig.hpp"
#include "favard/zeros.hpp"

namespace favard {

inline std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Run metadata plus a keyed results table; the persistence unit for CLI
// commands. Rows are append-only.
class ExperimentRecord {
  public:
    ExperimentRecord(std::string command, const ExperimentConfig& cfg)
        : command_(std::move(command)), config_hash_(cfg.hash()) {
        started_at_ = iso_timestamp();
    }

    void add_row(const std::string& key, nlohmann::json row) {
        rows_.push_back({{"key", key}, {"data", std::move(row)}});
    }

    void finish() { finished_at_ = iso_timestamp(); }

    const std::string& config_hash() const { return config_hash_; }
    const std::string& command() const { return command_; }
    const nlohmann::json& rows() const { return rows_; }

    nlohmann::json to_json() const {
        return {{"command", command_},
                {"config_hash", config_hash_},
                {"version", kVersion},
                {"started_at", started_at_},
                {"finished_at", finished_at_},
                {"results", rows_}};
    }

    void write(const std::string& out_dir) const {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(out_dir + "/record_" + command_ + ".json");
        out << to_json().dump(2) << "\n";
    }

  private:
    std::string command_;
    std::string config_hash_;
    std::string started_at_;
    std::string finished_at_;
    nlohmann::json rows_ = nlohmann::json::array();
};

// CSV with 17-significant-digit floats and the config hash on a leading
// comment line.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& config_hash,
              const std::string& command, const std::vector<std::string>& columns) {
        std::filesystem::create_directories(std::filesystem::path(path).parent_path().string());
        out_.open(path);
        if (!out_) throw std::runtime_error("cannot open " + path);
        out_ << "# config_hash=" << config_hash << " version=" << kVersion
             << " command=" << command << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }

  private:
    std::ofstream out_;
};

// ---------------------------------------------------------------------------
// favard-sweep

struct SweepRow {
    int n = 0;
    int theta_samples = 0;
    double favard_value = 0.0;
    double support_min = 0.0;
    double support_max = 0.0;
    double wall_ms = 0.0;
};

inline std::vector<SweepRow> favard_sweep_rows(const ExperimentConfig& cfg,
                                               const WorkerPool& pool,
                                               const SimilaritySystem& sys) {
    QuadratureKind quad = cfg.get_string("quadrature") == "simpson" ? QuadratureKind::Simpson
                                                                    : QuadratureKind::Midpoint;
    std::vector<SweepRow> rows;
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= cfg.get_int("n_max"); ++n) {
        auto t0 = std::chrono::steady_clock::now();
        FavardResult r = favard(sys, n, cfg.get_int("theta_samples"), quad, pool,
                                cfg.get_double("merge_eps_rel"));
        auto t1 = std::chrono::steady_clock::now();
        SweepRow row{n, r.theta_samples, r.value, r.support_min, r.support_max,
                     std::chrono::duration<double, std::milli>(t1 - t0).count()};
        if (row.favard_value > prev + 1e-12)
            throw invariant_violation("favard sweep: value increased from generation " +
                                      std::to_string(n - 1) + " to " + std::to_string(n));
        prev = row.favard_value;
        rows.push_back(row);
    }
    return rows;
}

inline ExperimentRecord run_favard_sweep(const ExperimentConfig& cfg, const WorkerPool& pool) {
    ExperimentRecord rec("favard-sweep", cfg);
    std::vector<SweepRow> rows = favard_sweep_rows(cfg, pool, cfg.system());
    CsvWriter csv(cfg.get_string("out_dir") + "/favard_sweep.csv", cfg.hash(), "favard-sweep",
                  {"n", "theta_samples", "favard", "support_min", "support_max", "wall_ms"});
    for (const auto& r : rows) {
        csv.row({std::to_string(r.n), std::to_string(r.theta_samples), fmt17(r.favard_value),
                 fmt17(r.support_min), fmt17(r.support_max), fmt17(r.wall_ms)});
        rec.add_row("n=" + std::to_string(r.n),
                    {{"favard", r.favard_value},
                     {"support_min", r.support_min},
                     {"support_max", r.support_max},
                     {"theta_samples", r.theta_samples}});
    }
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// decay-fit

struct DecayFit {
    double p_hat = 0.0;       // fitted decay exponent of C / n^p
    double intercept = 0.0;   // log C
    double residual_norm = 0.0;
    double c_hat = 0.0;       // min_n favard * n / log n
};

inline DecayFit fit_decay(const std::vector<std::pair<int, double>>& table) {
    std::vector<std::pair<double, double>> pts;
    DecayFit fit;
    fit.c_hat = std::numeric_limits<double>::infinity();
    for (const auto& [n, fav] : table) {
        if (n < 2 || fav <= 0.0) continue;
        pts.emplace_back(std::log(static_cast<double>(n)), std::log(fav));
        fit.c_hat = std::min(fit.c_hat, fav * n / std::log(static_cast<double>(n)));
    }
    if (pts.size() < 2) throw std::invalid_argument("fit_decay: need at least two rows with n >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double count = static_cast<double>(pts.size());
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    fit.p_hat = -slope;
    fit.intercept = (sy - slope * sx) / count;
    double rss = 0;
    for (auto [x, y] : pts) {
        double e = y - (fit.intercept + slope * x);
        rss += e * e;
    }
    fit.residual_norm = std::sqrt(rss);
    return fit;
}

inline std::vector<std::pair<int, double>> read_favard_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("decay-fit: cannot open " + path);
    std::vector<std::pair<int, double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("n,", 0) == 0) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3) continue;
        out.emplace_back(std::stoi(cells[0]), std::stod(cells[2]));
    }
    return out;
}

inline ExperimentRecord run_decay_fit(const ExperimentConfig& cfg) {
    ExperimentRecord rec("decay-fit", cfg);
    auto table = read_favard_csv(cfg.get_string("out_dir") + "/favard_sweep.csv");
    DecayFit fit = fit_decay(table);
    rec.add_row("fit", {{"p_hat", fit.p_hat},
                        {"intercept", fit.intercept},
                        {"residual_norm", fit.residual_norm},
                        {"c_hat", fit.c_hat}});
    CsvWriter csv(cfg.get_string("out_dir") + "/decay_fit.csv", cfg.hash(), "decay-fit",
                  {"p_hat", "intercept", "residual_norm", "c_hat"});
    csv.row({fmt17(fit.p_hat), fmt17(fit.intercept), fmt17(fit.residual_norm), fmt17(fit.c_hat)});
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// exponent-ledger

struct ExponentLedger {
    double sup_bound = 0.0;   // (e+1) e^H, the strip bound on the trinomial
    int blaschke_m = 0;       // floor(log2 sup_bound)
    double alpha_min = 0.0;   // 5 / log_3(9/7)
    double a_min = 0.0;       // M alpha_min + 2
    double eps0_max = 0.0;    // 1 / (2 A)
    double eps0_denominator = 0.0;
    double p_max = 0.0;       // 1 / (1/eps0 + beta)
    double p_denominator = 0.0;
};

inline ExponentLedger exponent_ledger(double h_strip, double beta, double margin = 1.0) {
    ExponentLedger l;
    l.sup_bound = (std::exp(1.0) + 1.0) * std::exp(h_strip) * margin;
    l.blaschke_m = static_cast<int>(std::floor(std::log2(l.sup_bound)));
    l.alpha_min = 5.0 / (std::log(9.0 / 7.0) / std::log(3.0));
    l.a_min = l.blaschke_m * l.alpha_min + 2.0;
    l.eps0_denominator = 2.0 * l.a_min;
    l.eps0_max = 1.0 / l.eps0_denominator;
    l.p_denominator = l.eps0_denominator + beta;
    l.p_max = 1.0 / l.p_denominator;
    return l;
}

inline ExperimentRecord run_exponent_ledger(const ExperimentConfig& cfg) {
    ExperimentRecord rec("exponent-ledger", cfg);
    ExponentLedger l = exponent_ledger(cfg.get_double("h_strip"), cfg.get_double("beta"));
    rec.add_row("ledger", {{"sup_bound", l.sup_bound},
                           {"M", l.blaschke_m},
                           {"alpha_min", l.alpha_min},
                           {"A_min", l.a_min},
                           {"eps0_max", l.eps0_max},
                           {"eps0_denominator", l.eps0_denominator},
                           {"p_max", l.p_max},
                           {"p_denominator", l.p_denominator}});
    CsvWriter csv(cfg.get_string("out_dir") + "/exponent_ledger.csv", cfg.hash(),
                  "exponent-ledger",
                  {"M", "alpha_min", "A_min", "eps0_max", "eps0_denominator", "p_max",
                   "p_denominator"});
    csv.row({std::to_string(l.blaschke_m), fmt17(l.alpha_min), fmt17(l.a_min), fmt17(l.eps0_max),
             fmt17(l.eps0_denominator), fmt17(l.p_max), fmt17(l.p_denominator)});
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// cetsq-audit

struct CetsqAuditRow {
    std::uint64_t seed = 0;
    std::size_t k = 0;
    double energy = 0.0;
    double overlap = 0.0;
    double ratio = 0.0;
};

inline FrequencySet random_frequency_set(std::mt19937_64& rng, int max_k, double alpha_max) {
    std::uniform_int_distribution<int> ksize(1, max_k);
    std::uniform_real_distribution<double> freq(0.0, alpha_max);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    FrequencySet fs;
    int k = ksize(rng);
    fs.frequencies.reserve(static_cast<std::size_t>(k));
    fs.coefficients.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        fs.frequencies.push_back(freq(rng));
        fs.coefficients.push_back(std::polar(1.0, phase(rng)));
    }
    return fs;
}

inline std::vector<CetsqAuditRow> cetsq_audit_rows(const ExperimentConfig& cfg) {
    std::vector<CetsqAuditRow> rows;
    const int sets = cfg.get_int("cetsq_sets");
    for (int i = 0; i < sets; ++i) {
        std::uint64_t sub = splitmix64(cfg.get_u64("seed") ^ splitmix64(static_cast<std::uint64_t>(i)));
        std::mt19937_64 rng = substream(cfg.get_u64("seed"), static_cast<std::uint64_t>(i));
        FrequencySet fs = random_frequency_set(rng, cfg.get_int("cetsq_max_k"),
                                               cfg.get_double("cetsq_alpha_max"));
        CetsqAuditRow row;
        row.seed = sub;
        row.k = fs.size();
        row.energy = exp_sum_energy(fs);
        row.overlap = overlap_energy(fs);
        row.ratio = row.energy / row.overlap;
        rows.push_back(row);
    }
    return rows;
}

inline ExperimentRecord run_cetsq_audit(const ExperimentConfig& cfg) {
    ExperimentRecord rec("cetsq-audit", cfg);
    auto rows = cetsq_audit_rows(cfg);
    CsvWriter csv(cfg.get_string("out_dir") + "/cetsq.csv", cfg.hash(), "cetsq-audit",
                  {"seed", "k", "energy", "overlap", "ratio"});
    double max_ratio = 0.0;
    for (const auto& r : rows) {
        csv.row({std::to_string(r.seed), std::to_string(r.k), fmt17(r.energy), fmt17(r.overlap),
                 fmt17(r.ratio)});
        if (!std::isfinite(r.ratio))
            throw invariant_violation("cetsq-audit: non-finite ratio encountered");
        max_ratio = std::max(max_ratio, r.ratio);
    }
    rec.add_row("summary", {{"sets", rows.size()}, {"max_ratio", max_ratio}});
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// stacking-audit

struct StackingAuditResult {
    std::vector<std::tuple<double, int, double, double, double>> rows;  // theta,N,K,M,ratio
    std::map<int, double> c_hat_per_n;  // max finite ratio per generation
};

inline StackingAuditResult stacking_audit(const ExperimentConfig& cfg, const WorkerPool& pool) {
    StackingAuditResult out;
    const SimilaritySystem sys = cfg.system();
    std::vector<double> thetas;
    for (int i = 0; i < 8; ++i) thetas.push_back((i + 0.5) * kPi / 8.0);
    std::vector<double> ks = {2.0, 3.0}, ms = {2.0, 3.0};
    struct Job {
        double theta, k, m;
        int n;
    };
    std::vector<Job> jobs;
    for (int n = cfg.get_int("stacking_n_lo"); n <= cfg.get_int("stacking_n_hi"); ++n)
        for (double th : thetas)
            for (double k : ks)
                for (double m : ms) jobs.push_back({th, k, m, n});
    std::vector<StackingOutcome> outcomes =
        pool.map<StackingOutcome>(jobs.size(), [&](std::size_t i) {
            return stacking_ratio(sys, jobs[i].theta, jobs[i].n, jobs[i].k, jobs[i].m);
        });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& j = jobs[i];
        const auto& o = outcomes[i];
        out.rows.emplace_back(j.theta, j.n, j.k, j.m, o.vacuous ? 0.0 : o.ratio);
        if (!o.vacuous) {
            auto [it, inserted] = out.c_hat_per_n.try_emplace(j.n, o.ratio);
            if (!inserted) it->second = std::max(it->second, o.ratio);
        }
    }
    return out;
}

inline ExperimentRecord run_stacking_audit(const ExperimentConfig& cfg, const WorkerPool& pool) {
    ExperimentRecord rec("stacking-audit", cfg);
    StackingAuditResult res = stacking_audit(cfg, pool);
    CsvWriter csv(cfg.get_string("out_dir") + "/stacking.csv", cfg.hash(), "stacking-audit",
                  {"theta", "N", "K", "M", "ratio"});
    for (const auto& [theta, n, k, m, ratio] : res.rows)
        csv.row({fmt17(theta), std::to_string(n), fmt17(k), fmt17(m), fmt17(ratio)});
    for (const auto& [n, c] : res.c_hat_per_n)
        rec.add_row("N=" + std::to_string(n), {{"c_hat", c}});
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// zero-trace

inline nlohmann::json trace_to_json(const ZeroTrace& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : trace.samples)
        arr.push_back({{"t", s.t},
                       {"re_lambda", s.lambda.real()},
                       {"im_lambda", s.lambda.imag()},
                       {"re_dlambda", s.dlambda.real()},
                       {"im_dlambda", s.dlambda.imag()},
                       {"k_index", trace.k_index}});
    return arr;
}

inline ExperimentRecord run_zero_trace(const ExperimentConfig& cfg, const Rect& rect) {
    ExperimentRecord rec("zero-trace", cfg);
    const double t0 = cfg.get_double("trace_t0");
    const double t1 = cfg.get_double("trace_t1");
    std::vector<Complex> seeds = find_zeros(Complex(t0, 0.0), rect);
    ContinuationOptions opt;
    opt.max_step = cfg.get_double("trace_max_step");
    opt.band_scale_m = cfg.get_int("m");
    opt.residual_tol = cfg.get_double("residual_tol");
    opt.strip_half_height = cfg.get_double("h_strip");
    nlohmann::json traces = nlohmann::json::array();
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        ZeroTrace trace = continue_zero(t0, seeds[i], t1, opt);
        traces.push_back({{"seed_re", seeds[i].real()},
                          {"seed_im", seeds[i].imag()},
                          {"termination", to_string(trace.termination)},
                          {"samples", trace_to_json(trace)}});
        rec.add_row("trace_" + std::to_string(i),
                    {{"samples", trace.samples.size()},
                     {"termination", to_string(trace.termination)}});
    }
    std::filesystem::create_directories(cfg.get_string("out_dir"));
    std::ofstream out(cfg.get_string("out_dir") + "/traces.json");
    out << nlohmann::json({{"config_hash", cfg.hash()},
                           {"version", kVersion},
                           {"t0", t0},
                           {"t1", t1},
                           {"traces", traces}})
               .dump(2)
        << "\n";
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// tiling-scan

inline ExperimentRecord run_tiling_scan(const ExperimentConfig& cfg, const WorkerPool& pool) {
    ExperimentRecord rec("tiling-scan", cfg);
    const int m = cfg.get_int("m");
    const double delta = cfg.get_double("delta_rect");
    // The small-value threshold must undercut the medium-band width:
    // epsilon_star < 3^{-alpha M} with M from the strip constant.
    {
        ExponentLedger l = exponent_ledger(cfg.get_double("h_strip"), cfg.get_double("beta"));
        double cap = std::pow(3.0, -cfg.get_double("alpha_ell") * l.blaschke_m);
        if (cfg.get_double("epsilon_star") >= cap)
            throw invariant_violation("tiling-scan: epsilon_star " +
                                      fmt17(cfg.get_double("epsilon_star")) +
                                      " must stay below 3^(-alpha M) = " + fmt17(cap));
    }
    CsvWriter csv(cfg.get_string("out_dir") + "/tiling.csv", cfg.hash(), "tiling-scan",
                  {"t", "m", "x0", "delta", "min_max_cofactor", "critical_k",
                   "ssv_interval_count"});
    std::vector<double> ts;
    for (int i = 0; i < 8; ++i) {
        double t = (i + 0.5) / 8.0;
        if (std::abs(t - 0.5) <= pow3(-m)) t += 2.0 * pow3(-m);
        ts.push_back(t);
    }
    for (double t : ts) {
        std::vector<Complex> zeros = find_zeros(Complex(t, 0.0), Rect{1.0, 30.0, -0.5, 0.5});
        std::size_t take = std::min<std::size_t>(zeros.size(), 3);
        for (std::size_t i = 0; i < take; ++i) {
            double x0 = zeros[i].real();
            Rect r{x0 - delta, x0 + delta, -delta, delta};
            TilingScan scan = tiling_scan(t, m, r, 0.0, 0.0, pool);
            if (scan.critical.size() > 1)
                throw invariant_violation("tiling-scan: two critical indices in one rectangle");
            SsvScanReport ssv = ssv_scan(t, m, cfg.get_double("epsilon_star"), x0 - delta,
                                         x0 + delta, 5, 0.0, pool);
            csv.row({fmt17(t), std::to_string(m), fmt17(x0), fmt17(delta),
                     fmt17(scan.min_max_cofactor),
                     std::to_string(scan.critical.empty() ? -1 : scan.critical.front()),
                     std::to_string(ssv.interval_count)});
            rec.add_row("t=" + fmt17(t) + ",x0=" + fmt17(x0),
                        {{"min_max_cofactor", scan.min_max_cofactor},
                         {"critical_count", scan.critical.size()},
                         {"ssv_intervals", ssv.interval_count}});
        }
    }
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// degenerate-sweep

inline ExperimentRecord run_degenerate_sweep(const ExperimentConfig& cfg, const WorkerPool& pool) {
    ExperimentRecord rec("degenerate-sweep", cfg);
    CsvWriter csv(cfg.get_string("out_dir") + "/degenerate.csv", cfg.hash(), "degenerate-sweep",
                  {"delta", "n", "favard", "jacobian_min", "jacobian_max"});
    for (double delta : cfg.degenerate_deltas()) {
        TriangleConfig tri = degenerate_triangle(delta);
        SimilaritySystem sys = triangle_system(tri, cfg.get_int("generation_cap"));
        // Jacobian audit for the angle change of variables.
        double jmin = std::numeric_limits<double>::infinity(), jmax = 0.0;
        const int samples = 10000;
        for (int i = 0; i < samples; ++i) {
            double theta = (i + 0.5) * kPi / samples;
            ThetaToT map = theta_to_t(tri, theta);
            double j = std::abs(map.dt_dtheta);
            jmin = std::min(jmin, j);
            jmax = std::max(jmax, j);
        }
        if (jmin < tri.degeneracy - 1e-9 || jmax > 1.0 / tri.degeneracy + 1e-9)
            throw invariant_violation("degenerate-sweep: Jacobian left [delta, 1/delta]");
        for (int n = 0; n <= cfg.get_int("degenerate_n_max"); ++n) {
            FavardResult r = favard(sys, n, cfg.get_int("theta_samples"), QuadratureKind::Midpoint,
                                    pool, cfg.get_double("merge_eps_rel"));
            csv.row({fmt17(tri.degeneracy), std::to_string(n), fmt17(r.value), fmt17(jmin),
                     fmt17(jmax)});
            rec.add_row("delta=" + fmt17(tri.degeneracy) + ",n=" + std::to_string(n),
                        {{"favard", r.value}, {"jacobian_min", jmin}, {"jacobian_max", jmax}});
        }
    }
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    return rec;
}

// ---------------------------------------------------------------------------
// lemma-suite

struct LemmaEntry {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LemmaSuiteResult {
    std::vector<LemmaEntry> entries;
    bool all_pass = true;

    void add(std::string name, bool pass, std::string detail) {
        entries.push_back({std::move(name), pass, std::move(detail)});
        all_pass = all_pass && pass;
    }
};

inline LemmaSuiteResult lemma_suite(const ExperimentConfig& cfg, const WorkerPool& pool) {
    LemmaSuiteResult suite;
    const std::uint64_t seed = cfg.get_u64("seed");

    {  // Riesz domination |phi_t(x)|^2 <= min(r(x), r(tx))
        std::mt19937_64 rng = substream(seed, 1);
        std::uniform_real_distribution<double> ut(0.0, 1.0), ux(-1e4, 1e4);
        const int n = cfg.get_int("audit_samples");
        int violations = 0;
        std::string example;
        for (int i = 0; i < n; ++i) {
            double t = ut(rng), x = ux(rng);
            if (!riesz_dominates(t, x, cfg.get_double("riesz_slack"))) {
                ++violations;
                if (example.empty()) example = "t=" + fmt17(t) + " x=" + fmt17(x);
            }
        }
        suite.add("riesz-domination", violations == 0,
                  violations == 0 ? std::to_string(n) + " samples clean"
                                  : std::to_string(violations) + " violations, first " + example);
    }

    {  // Plancherel agreement and monotone truncation
        bool pass = true;
        std::string detail;
        const double tol = cfg.get_double("plancherel_tol");
        for (int n = 0; n <= cfg.get_int("plancherel_n_max"); ++n) {
            PlancherelReport rep = plancherel_check(cfg.system(), n, 0.4, 0.0, tol);
            PlancherelReport wider =
                plancherel_check(cfg.system(), n, 0.4, rep.x_max * 2.0, tol);
            bool ok = rep.relative_gap < tol && wider.relative_gap <= rep.relative_gap + 1e-6;
            if (!ok && detail.empty())
                detail = "n=" + std::to_string(n) + " gap=" + fmt17(rep.relative_gap);
            pass = pass && ok;
            if (n == cfg.get_int("plancherel_n_max") && detail.empty())
                detail = "worst gap " + fmt17(rep.relative_gap) + " at X=" + fmt17(rep.x_max);
        }
        suite.add("plancherel", pass, detail);
    }

    {  // Carleson-type ratio finite; exact single-frequency anchor
        FrequencySet one{{0.0}, {Complex(1.0, 0.0)}};
        bool anchor = std::abs(cetsq_ratio(one) - 0.5) < 1e-15;
        auto rows = cetsq_audit_rows(cfg);
        double max_ratio = 0.0;
        bool finite = true;
        for (const auto& r : rows) {
            finite = finite && std::isfinite(r.ratio);
            max_ratio = std::max(max_ratio, r.ratio);
        }
        suite.add("cetsq", anchor && finite,
                  "max ratio " + fmt17(max_ratio) + " over " + std::to_string(rows.size()) +
                      " sets");
    }

    {  // No real branch points
        int nonempty = 0;
        std::string example;
        const int n = 1000;
        for (int i = 0; i < n; ++i) {
            double t = (i + 0.5) / n;
            auto cands = branch_candidates(Complex(t, 0.0));
            if (!cands.empty()) {
                ++nonempty;
                if (example.empty()) example = "t=" + fmt17(t);
            }
        }
        suite.add("real-branch-points", nonempty == 0,
                  nonempty == 0 ? "1000 parameters clean" : "candidates at " + example);
    }

    {  // Root stability across the lemma's (k, k') range
        const double c = cfg.get_double("stability_c");
        bool pass = true;
        std::string example;
        double worst = std::numeric_limits<double>::infinity();
        for (int kp = 1; kp <= 6 && pass; ++kp) {
            double cap = c * pow3(-kp);
            const int grid = 17;
            for (int i = 0; i < grid; ++i)
                for (int j = 0; j < grid; ++j)
                    for (int k = 1; k <= kp + 1; ++k) {
                        double y1 = -cap + 2.0 * cap * i / (grid - 1);
                        double y2 = -cap + 2.0 * cap * j / (grid - 1);
                        double v = root_stability(y1, y2, k, kp, c).real_part;
                        worst = std::min(worst, v);
                        if (v < 2.0 && example.empty())
                            example = "k'=" + std::to_string(kp) + " k=" + std::to_string(k);
                    }
        }
        pass = example.empty();
        suite.add("root-stability", pass, "min value " + fmt17(worst));
    }

    {  // Unique critical index on sampled rectangles
        const int m = cfg.get_int("m");
        const double delta = cfg.get_double("delta_rect");
        bool pass = true;
        std::string example;
        double min_cof = std::numeric_limits<double>::infinity();
        for (double t : {0.21, 0.37, 0.66, 0.83}) {
            std::vector<Complex> zeros = find_zeros(Complex(t, 0.0), Rect{1.0, 25.0, -0.5, 0.5});
            std::size_t take = std::min<std::size_t>(zeros.size(), 2);
            for (std::size_t i = 0; i < take; ++i) {
                Rect r{zeros[i].real() - delta, zeros[i].real() + delta, -delta, delta};
                TilingScan scan = tiling_scan(t, m, r, 0.0, 0.0, pool);
                min_cof = std::min(min_cof, scan.min_max_cofactor);
                if (scan.critical.size() > 1 || scan.min_max_cofactor < pow3(-m)) {
                    pass = false;
                    if (example.empty()) example = "t=" + fmt17(t) + " x0=" + fmt17(zeros[i].real());
                }
            }
        }
        suite.add("analytic-tiling", pass,
                  pass ? "min max-cofactor " + fmt17(min_cof) : "failure at " + example);
    }

    {  // Stacking ratios finite on a small grid
        bool pass = true;
        double worst = 0.0;
        std::string example;
        for (double theta : {0.3, 0.9, 1.7, 2.6}) {
            StackingOutcome o = stacking_ratio(cfg.system(), theta, 6, cfg.get_double("stacking_k"),
                                               cfg.get_double("stacking_m"));
            if (o.vacuous) continue;
            if (!std::isfinite(o.ratio)) {
                pass = false;
                if (example.empty()) example = "theta=" + fmt17(theta);
            }
            worst = std::max(worst, o.ratio);
        }
        suite.add("stacking", pass, pass ? "max ratio " + fmt17(worst) : "failure at " + example);
    }

    return suite;
}

inline ExperimentRecord run_lemma_suite(const ExperimentConfig& cfg, const WorkerPool& pool,
                                        LemmaSuiteResult* out_result = nullptr) {
    ExperimentRecord rec("lemma-suite", cfg);
    LemmaSuiteResult res = lemma_suite(cfg, pool);
    for (const auto& e : res.entries)
        rec.add_row(e.name, {{"pass", e.pass}, {"detail", e.detail}});

    // Medium-band energy scan alongside the suite (energy.csv interface).
    {
        CsvWriter csv(cfg.get_string("out_dir") + "/energy.csv", cfg.hash(), "lemma-suite",
                      {"t", "n", "m", "ell", "p1_energy", "ratio_to_3m"});
        const int n = 8, m = 3;
        for (double t : {0.15, 0.3, 0.45, 0.62, 0.8}) {
            P1EnergyReport rep = p1_energy(t, n, m);
            csv.row({fmt17(t), std::to_string(n), std::to_string(m), std::to_string(cfg.ell()),
                     fmt17(rep.energy), fmt17(rep.ratio_to_3m)});
        }
    }
    rec.finish();
    rec.write(cfg.get_string("out_dir"));
    if (out_result) *out_result = res;
    if (!res.all_pass) {
        std::string failed;
        for (const auto& e : res.entries)
            if (!e.pass) failed += (failed.empty() ? "" : ", ") + e.name + " (" + e.detail + ")";
        throw invariant_violation("lemma-suite: failed: " + failed);
    }
    return rec;
}

}  // namespace favard
