// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_CLI_HPP
#define ISACSIM_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "metrics.hpp"
#include "simcore.hpp"

namespace isacsim::cli {

namespace fs = std::filesystem;

struct RunOutcome {
    fs::path dir;
    metrics::RunSummary summary;
};

/// Execute one run and export into dir. Partial outputs are removed when the
/// run or the export fails.
inline RunOutcome run_and_export(const cfg::SimConfig& config, const fs::path& dir) {
    const bool existed = fs::exists(dir);
    try {
        auto report = sim::run_simulation(config);
        auto summary = metrics::summarize_run(report);
        metrics::export_csv(report, dir);
        metrics::export_json(summary, dir);
        return {dir, std::move(summary)};
    } catch (...) {
        std::error_code ec;
        if (!existed) fs::remove_all(dir, ec);
        throw;
    }
}

inline void print_outcome(const RunOutcome& out) {
    std::cout << "wrote " << out.dir.string() << "  packets=" << out.summary.packets_total
              << " completed=" << out.summary.packets_completed
              << " p99_delay_s=" << fmt_double(out.summary.delay_p99)
              << " mean_pd=" << fmt_double(out.summary.mean_pd) << '\n';
}

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"isacsim: time-shared sensing/URLLC link-level simulator"};

    std::string config_path;
    std::string scheduler;
    std::string pd_formula;
    std::string sweep;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    std::optional<double> fixed_lambda;
    const char* env_out = std::getenv("ISACSIM_OUT");
    std::string out_dir = env_out != nullptr ? env_out : "out";

    app.add_option("--config", config_path, "Configuration file (defaults apply when omitted)");
    app.add_option("--scheduler", scheduler, "Scheduler: nbs or rr")
        ->check(CLI::IsMember({"nbs", "rr"}));
    app.add_option("--seed", seed, "Master seed");
    app.add_option("--duration", duration, "Simulated horizon in seconds");
    app.add_option("--out", out_dir, "Output directory (env ISACSIM_OUT overrides the default)");
    app.add_option("--sweep", sweep, "Sweep mode: pfa, lambda or scheduler")
        ->check(CLI::IsMember({"pfa", "lambda", "scheduler"}));
    app.add_option("--pd-formula", pd_formula, "Detection expression: paper or classical")
        ->check(CLI::IsMember({"paper", "classical"}));
    app.add_option("--fixed-lambda", fixed_lambda,
                   "Pin the cumulative arrival rate (packets/s) instead of per-second resampling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        cfg::SimConfig config =
            config_path.empty() ? cfg::default_config() : cfg::parse_config(config_path);
        if (seed) config.run.seed = *seed;
        if (duration) config.run.horizon_s = *duration;
        if (!scheduler.empty())
            config.run.scheduler = scheduler == "nbs" ? sched::SchedulerKind::Nbs
                                                      : sched::SchedulerKind::RoundRobin;
        if (!pd_formula.empty())
            config.sensing.pd_formula = pd_formula == "paper" ? sensing::PdFormula::Paper
                                                              : sensing::PdFormula::Classical;
        if (fixed_lambda) config.traffic.fixed_lambda = *fixed_lambda;
        cfg::validate(config);

        const std::string hash8 = cfg::config_hash(config).substr(0, 8);
        const std::string seed_tag = "s" + fmt_int(static_cast<std::int64_t>(config.run.seed));
        const fs::path base(out_dir);

        if (sweep.empty()) {
            const fs::path dir =
                base / (sched::to_string(config.run.scheduler) + "_" + seed_tag + "_" + hash8);
            print_outcome(run_and_export(config, dir));
        } else if (sweep == "scheduler") {
            const fs::path dir = base / ("sweep_scheduler_" + seed_tag + "_" + hash8);
            for (auto kind : {sched::SchedulerKind::Nbs, sched::SchedulerKind::RoundRobin}) {
                cfg::SimConfig arm = config;
                arm.run.scheduler = kind;
                print_outcome(run_and_export(arm, dir / sched::to_string(kind)));
            }
        } else if (sweep == "pfa") {
            const fs::path dir = base / ("sweep_pfa_" + seed_tag + "_" + hash8);
            for (double pfa : config.sensing.pfa_sweep) {
                for (auto kind : {sched::SchedulerKind::Nbs, sched::SchedulerKind::RoundRobin}) {
                    cfg::SimConfig arm = config;
                    arm.sensing.pfa = pfa;
                    arm.run.scheduler = kind;
                    print_outcome(run_and_export(
                        arm, dir / ("pfa_" + fmt_double(pfa)) / sched::to_string(kind)));
                }
            }
        } else {  // lambda
            const fs::path dir = base / ("sweep_lambda_" + seed_tag + "_" + hash8);
            for (double lam : config.traffic.lambda_sweep) {
                cfg::SimConfig arm = config;
                arm.traffic.fixed_lambda = lam;
                print_outcome(run_and_export(arm, dir / ("lambda_" + fmt_double(lam))));
            }
        }
        return 0;
    } catch (const cfg::ConfigError& e) {
        std::cerr << "isacsim: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "isacsim: " << e.what() << '\n';
        return 3;
    }
}

} // namespace isacsim::cli

#endif
