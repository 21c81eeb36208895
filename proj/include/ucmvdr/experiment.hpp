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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/metrics.hpp"

namespace ucmvdr {

struct FixedDl {
    double delta = 0.0;
};

/// Calibrate delta so the pilot mean DL WNG equals the pilot mean UC WNG.
struct MatchMeanWng {
    int pilot_trials = 1000;
};

using DlPolicy = std::variant<FixedDl, MatchMeanWng>;

struct ExperimentConfig {
    UlaConfig ula;
    Scene scene;
    int n_snapshots = 12;
    int n_trials = 5000;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::CBF, Method::MVDR, Method::SMI, Method::DL, Method::UC};
    std::optional<DlPolicy> dl_policy = MatchMeanWng{};
    std::filesystem::path output_dir = "out";
    /// Worker threads; 0 means hardware concurrency.
    int threads = 0;
    std::size_t interferer_index = 0;
    int exemplar_trial = 0;
    int beampattern_points = 2001;
    int wng_hist_bins = 44;

    bool has_method(Method m) const;
    /// Throws ConfigError.
    void validate() const;
};

/// N = 11, L = 12, u0 = 0, one interferer at u1 = 3/11 with INR 40 dB
/// (sigma_1^2 = 1e4, sigma_w^2 = 1), 5000 trials, all methods.
ExperimentConfig reference_scenario_config();

/// Parses the sectioned key-value format described in docs/config_format.md.
/// Keys absent from the text keep their reference_scenario_config() defaults.
ExperimentConfig parse_config(std::istream &in, const std::string &source_name = "<config>");
ExperimentConfig load_config(const std::filesystem::path &path);

struct MethodMetrics {
    Method method = Method::CBF;
    double out_power = 0.0;
    double wng = 0.0;
    double nd_db = 0.0;
    double total_out_power = 0.0;
    std::string error; // empty on success

    bool ok() const { return error.empty(); }
};

struct TrialRecord {
    std::uint64_t trial_index = 0;
    std::uint64_t seed = 0;
    std::vector<MethodMetrics> methods;

    const MethodMetrics *find(Method m) const;
};

/// Delta actually used for DL plus calibration metadata.
struct DlResolution {
    double delta = 0.0;
    bool calibrated = false;
    double target_mean_wng = 0.0;
    double achieved_mean_wng = 0.0;
    int pilot_trials = 0;
};

/// Mean UC WNG over the calibration pilot set.
double pilot_mean_uc_wng(const ExperimentConfig &config, int pilot_trials);

/// Runs calibration if the policy asks for it. Returns nullopt when DL is not
/// among the requested methods.
std::optional<DlResolution> resolve_dl(const ExperimentConfig &config);

/// Weights of every requested method for one trial. Per-method failures are
/// reported in `errors`; `uc_zeros` holds the projected UC zero set when UC
/// succeeded.
struct TrialWeights {
    std::uint64_t seed = 0;
    std::map<Method, WeightVector> weights;
    std::map<Method, std::string> errors;
    ZeroSet uc_zeros;
};

TrialWeights compute_trial_weights(const ExperimentConfig &config, std::uint64_t trial_index,
                                   double dl_delta);

/// Generates the trial's snapshots from mix_seed(config.seed, trial_index)
/// and evaluates every requested method. Numerical failures are recorded per
/// method and never thrown.
TrialRecord run_trial(const ExperimentConfig &config, std::uint64_t trial_index,
                      double dl_delta = 0.0);

struct MethodSummary {
    Method method = Method::CBF;
    int n_ok = 0;
    int n_errors = 0;
    double median_out_power = 0.0;
    double mean_out_power = 0.0;
    double mean_wng = 0.0;
    double median_total_out_power = 0.0;
    double mean_total_out_power = 0.0;
};

struct ExperimentSummary {
    int n_trials = 0;
    std::uint64_t seed = 0;
    int n_snapshots = 0;
    int n_sensors = 0;
    std::vector<MethodSummary> methods;
    std::optional<DlResolution> dl;
    double ensemble_out_power = 0.0;
    double ensemble_wng = 0.0;
    double ensemble_nd_db = 0.0;
    /// Fraction of trials with UC WNG strictly above SMI WNG, when both ran.
    std::optional<double> uc_over_smi_wng_fraction;

    const MethodSummary *find(Method m) const;
};

/// Summary statistics over trials, ignoring failed method evaluations.
ExperimentSummary summarize(const ExperimentConfig &config, const std::vector<TrialRecord> &records,
                            const std::optional<DlResolution> &dl);

struct ExperimentResult {
    ExperimentSummary summary;
    std::vector<TrialRecord> records;
};

struct RunOptions {
    bool write_artifacts = true;
};

/// Calibrates (if needed), runs all trials in parallel, and writes
/// trials.csv, ecdf_<method>.csv, wng_hist.csv, wng_scatter.csv,
/// beampattern_<method>.csv, zeros_<method>.csv and summary.json into
/// config.output_dir. Output directory problems are reported (IoError)
/// before any trial runs.
ExperimentResult run_experiment(const ExperimentConfig &config, const RunOptions &options = {});

// CSV / JSON writers. Floats use 17 significant digits.
std::string format_double(double value);
void write_trials_csv(std::ostream &out, const std::vector<TrialRecord> &records);
void write_ecdf_csv(std::ostream &out, const std::vector<EcdfPoint> &ecdf);
void write_beampattern_csv(std::ostream &out, const BeampatternSamples &samples);
void write_zeros_csv(std::ostream &out, const ZeroSet &zeros);
std::string summary_to_json(const ExperimentSummary &summary);

} // namespace ucmvdr
