// Batch experiment runner for the gasket projection laboratory.
//
// Exit codes: 0 success, 2 invariant violation, 3 resource cap exceeded,
// 4 configuration error, 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "favard/favard.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> jobs;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "configuration file (key = value lines)");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--seed", flags.seed, "64-bit audit seed");
    cmd->add_option("--jobs", flags.jobs, "worker pool size (0 = hardware)");
}

favard::ExperimentConfig load_config(const CommonFlags& flags) {
    favard::ExperimentConfig cfg = flags.config_path.empty()
                                       ? favard::ExperimentConfig()
                                       : favard::ExperimentConfig::from_file(flags.config_path);
    if (!flags.out_dir.empty()) cfg.set("out_dir", flags.out_dir);
    if (flags.seed) cfg.set("seed", std::to_string(*flags.seed));
    if (flags.jobs) cfg.set("jobs", std::to_string(*flags.jobs));
    return cfg;
}

favard::WorkerPool make_pool(const favard::ExperimentConfig& cfg) {
    return favard::WorkerPool(cfg.get_int("jobs"));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"favardlab: Favard length and projection experiments for self-similar disc systems"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string rect_spec = "3.5,5.0,-1.0,1.0";
    std::optional<double> t0_flag, t1_flag;
    std::optional<int> m_flag;

    CLI::App* sweep = app.add_subcommand("favard-sweep", "Favard length for n = 0..n_max");
    add_common(sweep, flags);
    CLI::App* decay = app.add_subcommand("decay-fit", "fit decay exponent to favard_sweep.csv");
    add_common(decay, flags);
    CLI::App* lemmas = app.add_subcommand("lemma-suite", "run the lemma verification suite");
    add_common(lemmas, flags);
    CLI::App* ztrace = app.add_subcommand("zero-trace", "continue zeros of the trinomial in t");
    add_common(ztrace, flags);
    ztrace->add_option("--t0", t0_flag, "start parameter");
    ztrace->add_option("--t1", t1_flag, "end parameter");
    ztrace->add_option("--m", m_flag, "band scale (critical band half-height 3^-m)");
    ztrace->add_option("--rect", rect_spec, "seed rectangle re_lo,re_hi,im_lo,im_hi");
    CLI::App* tscan = app.add_subcommand("tiling-scan", "cofactor floor / critical index scan");
    add_common(tscan, flags);
    CLI::App* cetsq = app.add_subcommand("cetsq-audit", "random frequency-set energy audit");
    add_common(cetsq, flags);
    CLI::App* stack = app.add_subcommand("stacking-audit", "level-set stacking constants");
    add_common(stack, flags);
    CLI::App* degen = app.add_subcommand("degenerate-sweep", "Favard sweeps of degenerate gaskets");
    add_common(degen, flags);
    CLI::App* ledger = app.add_subcommand("exponent-ledger", "derived exponent bookkeeping");
    add_common(ledger, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        favard::ExperimentConfig cfg = load_config(flags);
        if (ztrace->parsed()) {
            if (t0_flag) cfg.set("trace_t0", favard::fmt17(*t0_flag));
            if (t1_flag) cfg.set("trace_t1", favard::fmt17(*t1_flag));
            if (m_flag) cfg.set("m", std::to_string(*m_flag));
        }
        favard::WorkerPool pool = make_pool(cfg);

        if (sweep->parsed()) {
            favard::run_favard_sweep(cfg, pool);
        } else if (decay->parsed()) {
            favard::ExperimentRecord rec = favard::run_decay_fit(cfg);
            std::cout << rec.rows().dump(2) << "\n";
        } else if (lemmas->parsed()) {
            favard::LemmaSuiteResult res;
            try {
                favard::run_lemma_suite(cfg, pool, &res);
            } catch (const favard::invariant_violation&) {
                for (const auto& e : res.entries)
                    std::cout << (e.pass ? "PASS " : "FAIL ") << e.name << ": " << e.detail << "\n";
                throw;
            }
            for (const auto& e : res.entries)
                std::cout << (e.pass ? "PASS " : "FAIL ") << e.name << ": " << e.detail << "\n";
        } else if (ztrace->parsed()) {
            std::vector<double> r;
            std::stringstream ss(rect_spec);
            std::string cell;
            while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
            if (r.size() != 4) throw favard::config_error("zero-trace: --rect needs 4 numbers");
            favard::run_zero_trace(cfg, favard::Rect{r[0], r[1], r[2], r[3]});
        } else if (tscan->parsed()) {
            favard::run_tiling_scan(cfg, pool);
        } else if (cetsq->parsed()) {
            favard::run_cetsq_audit(cfg);
        } else if (stack->parsed()) {
            favard::run_stacking_audit(cfg, pool);
        } else if (degen->parsed()) {
            favard::run_degenerate_sweep(cfg, pool);
        } else if (ledger->parsed()) {
            favard::ExperimentRecord rec = favard::run_exponent_ledger(cfg);
            std::cout << rec.rows().dump(2) << "\n";
        }
        return 0;
    } catch (const favard::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 4;
    } catch (const favard::resource_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const favard::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
