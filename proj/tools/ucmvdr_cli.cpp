// SPDX-License-Identifier: Apache-2.0
//
// ucmvdr - unit circle MVDR adaptive beamforming for uniform linear arrays
// Copyright (C) 2026 The ucmvdr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucmvdr/errors.hpp"
#include "ucmvdr/experiment.hpp"
#include "ucmvdr/polynomial.hpp"

namespace {

using namespace ucmvdr;

struct CommonOptions {
    std::string config_path;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> snapshots;
    std::optional<int> threads;
    std::optional<double> delta;
    std::vector<std::string> methods;
    std::string out;
};

void add_common(CLI::App *cmd, CommonOptions &opts)
{
    cmd->add_option("-c,--config", opts.config_path, "Experiment config file (default: built-in reference scenario)");
    cmd->add_option("--seed", opts.seed, "Base seed");
    cmd->add_option("--snapshots", opts.snapshots, "Snapshots per trial (L)");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = hardware concurrency)");
    cmd->add_option("--delta", opts.delta, "Fixed diagonal loading factor for DL (skips calibration)");
}

ExperimentConfig build_config(const CommonOptions &opts)
{
    ExperimentConfig cfg = opts.config_path.empty() ? reference_scenario_config() : load_config(opts.config_path);
    if (opts.trials)
        cfg.n_trials = *opts.trials;
    if (opts.seed)
        cfg.seed = *opts.seed;
    if (opts.snapshots)
        cfg.n_snapshots = *opts.snapshots;
    if (opts.threads)
        cfg.threads = *opts.threads;
    if (opts.delta)
        cfg.dl_policy = FixedDl{*opts.delta};
    if (!opts.methods.empty()) {
        cfg.methods.clear();
        for (const auto &name : opts.methods) {
            const Method m = parse_method(name);
            if (!cfg.has_method(m))
                cfg.methods.push_back(m);
        }
    }
    if (!opts.out.empty())
        cfg.output_dir = opts.out;
    cfg.validate();
    return cfg;
}

// Writes to the named file, or stdout when the name is empty or "-".
template <typename Writer>
void emit(const std::string &path, Writer &&write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    write(out);
}

void print_summary(const ExperimentSummary &s, const ExperimentConfig &cfg)
{
    std::printf("trials %d  N %d  L %d  seed %llu\n", s.n_trials, s.n_sensors, s.n_snapshots,
                static_cast<unsigned long long>(s.seed));
    if (s.dl)
        std::printf("DL delta %.6g%s\n", s.dl->delta, s.dl->calibrated ? " (calibrated)" : "");
    std::printf("ensemble: out_power %.6g  wng %.6f  nd %.2f dB\n", s.ensemble_out_power, s.ensemble_wng,
                s.ensemble_nd_db);
    std::printf("%-6s %8s %8s %16s %16s %10s\n", "method", "ok", "errors", "median_power", "mean_power",
                "mean_wng");
    for (const auto &m : s.methods)
        std::printf("%-6s %8d %8d %16.6g %16.6g %10.4f\n", to_string(m.method), m.n_ok, m.n_errors,
                    m.median_out_power, m.mean_out_power, m.mean_wng);
    if (s.uc_over_smi_wng_fraction)
        std::printf("fraction of trials with UC WNG > SMI WNG: %.4f\n", *s.uc_over_smi_wng_fraction);
    std::printf("artifacts written to %s\n", cfg.output_dir.string().c_str());
}

double dl_delta_for(const ExperimentConfig &cfg)
{
    const auto dl = resolve_dl(cfg);
    return dl ? dl->delta : 0.0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Unit circle MVDR beamforming experiments"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    auto *run = app.add_subcommand("run", "Run the Monte Carlo experiment and write CSV/JSON artifacts");
    add_common(run, run_opts);
    run->add_option("--trials", run_opts.trials, "Monte Carlo trials");
    run->add_option("--method", run_opts.methods, "Restrict to these methods (repeatable)");
    run->add_option("--out", run_opts.out, "Output directory");

    CommonOptions bp_opts;
    std::string bp_method = "UC";
    int bp_trial = 0;
    int bp_points = 2001;
    auto *bp = app.add_subcommand("beampattern", "Beampattern of one method for one trial as CSV");
    add_common(bp, bp_opts);
    bp->add_option("--method", bp_method, "CBF, MVDR, SMI, DL or UC");
    bp->add_option("--trial", bp_trial, "Trial index")->check(CLI::NonNegativeNumber);
    bp->add_option("--points", bp_points, "Grid points on [-1, 1]")->check(CLI::Range(2, 1000000));
    bp->add_option("--out", bp_opts.out, "Output CSV file (default stdout)");

    CommonOptions z_opts;
    std::string z_method = "UC";
    int z_trial = 0;
    auto *zeros = app.add_subcommand("zeros", "Array polynomial zeros of one method for one trial as CSV");
    add_common(zeros, z_opts);
    zeros->add_option("--method", z_method, "CBF, MVDR, SMI, DL or UC");
    zeros->add_option("--trial", z_trial, "Trial index")->check(CLI::NonNegativeNumber);
    zeros->add_option("--out", z_opts.out, "Output CSV file (default stdout)");

    CommonOptions cal_opts;
    std::optional<int> cal_pilots;
    std::optional<double> cal_target;
    auto *cal = app.add_subcommand("calibrate-dl", "Calibrate the DL factor to a target mean WNG");
    add_common(cal, cal_opts);
    cal->add_option("--pilots", cal_pilots, "Pilot trials (default from config, else 1000)");
    cal->add_option("--target", cal_target, "Target mean WNG (default: pilot mean UC WNG)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*run) {
            const ExperimentConfig cfg = build_config(run_opts);
            const ExperimentResult result = run_experiment(cfg);
            print_summary(result.summary, cfg);
        } else if (*bp || *zeros) {
            CommonOptions &opts = *bp ? bp_opts : z_opts;
            const std::string out_path = opts.out;
            opts.out.clear();
            opts.methods = {*bp ? bp_method : z_method};
            const ExperimentConfig cfg = build_config(opts);
            const Method method = cfg.methods.front();
            const int trial = *bp ? bp_trial : z_trial;
            const TrialWeights tw = compute_trial_weights(cfg, static_cast<std::uint64_t>(trial),
                                                          method == Method::DL ? dl_delta_for(cfg) : 0.0);
            if (const auto err = tw.errors.find(method); err != tw.errors.end())
                throw NumericalError(std::string(to_string(method)) + " failed: " + err->second);
            const WeightVector &w = tw.weights.at(method);
            if (*bp) {
                const auto grid = uniform_u_grid(bp_points);
                const auto samples = beampattern(w, cfg.ula, grid);
                emit(out_path, [&](std::ostream &os) { write_beampattern_csv(os, samples); });
            } else {
                const ZeroSet z = method == Method::UC ? tw.uc_zeros : weights_to_polynomial(w).zeros();
                emit(out_path, [&](std::ostream &os) { write_zeros_csv(os, z); });
            }
        } else if (*cal) {
            ExperimentConfig cfg = build_config(cal_opts);
            int pilots = 1000;
            if (cal_pilots)
                pilots = *cal_pilots;
            else if (cfg.dl_policy && std::holds_alternative<MatchMeanWng>(*cfg.dl_policy))
                pilots = std::get<MatchMeanWng>(*cfg.dl_policy).pilot_trials;
            const double target = cal_target ? *cal_target : pilot_mean_uc_wng(cfg, pilots);
            CalibrationOptions copts;
            copts.threads = cfg.threads;
            const CalibrationResult r = calibrate_dl_factor(cfg.ula, cfg.scene, cfg.n_snapshots, pilots,
                                                            target, cfg.seed, copts);
            std::printf("target_mean_wng %.17g\npilot_mean_wng %.17g\niterations %d\ndelta %.17g\n",
                        r.target_mean_wng, r.achieved_mean_wng, r.iterations, r.delta);
            std::printf("use with: run --delta %.17g\n", r.delta);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError &e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return 1;
    } catch (const CalibrationError &e) {
        std::cerr << "calibration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
