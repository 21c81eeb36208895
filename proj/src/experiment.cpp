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

#include "ucmvdr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>

#include "parallel.hpp"
#include "ucmvdr/covariance.hpp"
#include "ucmvdr/errors.hpp"
#include "ucmvdr/polynomial.hpp"
#include "ucmvdr/random.hpp"

namespace ucmvdr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool needs_snapshots(const ExperimentConfig &config)
{
    return config.has_method(Method::SMI) || config.has_method(Method::DL) ||
           config.has_method(Method::UC);
}

} // namespace

const MethodMetrics *TrialRecord::find(Method m) const
{
    for (const auto &mm : methods)
        if (mm.method == m)
            return &mm;
    return nullptr;
}

const MethodSummary *ExperimentSummary::find(Method m) const
{
    for (const auto &ms : methods)
        if (ms.method == m)
            return &ms;
    return nullptr;
}

TrialWeights compute_trial_weights(const ExperimentConfig &config, std::uint64_t trial_index,
                                   double dl_delta)
{
    TrialWeights out;
    out.seed = mix_seed(config.seed, trial_index);

    std::optional<CovarianceMatrix> scm;
    std::string scm_error;
    if (needs_snapshots(config)) {
        try {
            scm = sample_covariance(
                generate_snapshots(config.ula, config.scene, config.n_snapshots, out.seed));
        } catch (const std::exception &e) {
            scm_error = e.what();
        }
    }

    for (Method m : config.methods) {
        try {
            switch (m) {
            case Method::CBF:
                out.weights.emplace(m, cbf_weights(config.ula));
                break;
            case Method::MVDR:
                out.weights.emplace(m, mvdr_weights(ensemble_covariance(config.ula, config.scene), config.ula));
                break;
            case Method::SMI:
            case Method::DL:
            case Method::UC:
                if (!scm)
                    throw NumericalError(scm_error);
                if (m == Method::SMI) {
                    out.weights.emplace(m, mvdr_weights(*scm, config.ula));
                } else if (m == Method::DL) {
                    out.weights.emplace(m, mvdr_weights(diagonal_load(*scm, dl_delta), config.ula));
                } else {
                    out.uc_zeros = uc_mvdr_zeros(*scm, config.ula);
                    out.weights.emplace(m, weights_from_zeros(out.uc_zeros, config.ula, Method::UC));
                }
                break;
            }
        } catch (const std::exception &e) {
            out.errors.emplace(m, e.what());
        }
    }
    return out;
}

TrialRecord run_trial(const ExperimentConfig &config, std::uint64_t trial_index, double dl_delta)
{
    const TrialWeights tw = compute_trial_weights(config, trial_index, dl_delta);
    const CovarianceMatrix ensemble = ensemble_covariance(config.ula, config.scene);
    const double u_int = config.scene.sources.at(config.interferer_index).direction_u;

    TrialRecord record;
    record.trial_index = trial_index;
    record.seed = tw.seed;
    for (Method m : config.methods) {
        MethodMetrics mm;
        mm.method = m;
        if (const auto err = tw.errors.find(m); err != tw.errors.end()) {
            mm.out_power = mm.wng = mm.nd_db = mm.total_out_power = kNaN;
            mm.error = err->second.empty() ? "unknown failure" : err->second;
        } else {
            const WeightVector &w = tw.weights.at(m);
            try {
                mm.out_power = interferer_output_power(w, config.scene, config.ula, config.interferer_index);
                mm.wng = white_noise_gain(w);
                mm.nd_db = notch_depth(w, config.ula, u_int);
                mm.total_out_power = total_output_power(w, ensemble);
            } catch (const std::exception &e) {
                mm.out_power = mm.wng = mm.nd_db = mm.total_out_power = kNaN;
                mm.error = e.what();
            }
        }
        record.methods.push_back(std::move(mm));
    }
    return record;
}

double pilot_mean_uc_wng(const ExperimentConfig &config, int pilot_trials)
{
    std::vector<double> wng(static_cast<std::size_t>(pilot_trials), kNaN);
    detail::parallel_for(wng.size(), config.threads, [&](std::size_t i) {
        try {
            const auto scm = sample_covariance(generate_snapshots(
                config.ula, config.scene, config.n_snapshots, pilot_seed(config.seed, i)));
            wng[i] = white_noise_gain(uc_mvdr_weights(scm, config.ula));
        } catch (const std::exception &) {
            // Failed pilots are left out of the mean.
        }
    });
    std::vector<double> ok;
    std::copy_if(wng.begin(), wng.end(), std::back_inserter(ok), [](double x) { return !std::isnan(x); });
    if (ok.empty())
        throw NumericalError("every calibration pilot trial failed for UC");
    return mean(ok);
}

std::optional<DlResolution> resolve_dl(const ExperimentConfig &config)
{
    if (!config.has_method(Method::DL))
        return std::nullopt;
    if (!config.dl_policy)
        throw ConfigError("DL requested but no dl policy set");

    DlResolution res;
    if (const auto *fixed = std::get_if<FixedDl>(&*config.dl_policy)) {
        res.delta = fixed->delta;
        return res;
    }
    const int pilots = std::get<MatchMeanWng>(*config.dl_policy).pilot_trials;
    const double target = pilot_mean_uc_wng(config, pilots);
    CalibrationOptions opts;
    opts.threads = config.threads;
    const CalibrationResult cal =
        calibrate_dl_factor(config.ula, config.scene, config.n_snapshots, pilots, target, config.seed, opts);
    res.delta = cal.delta;
    res.calibrated = true;
    res.target_mean_wng = cal.target_mean_wng;
    res.achieved_mean_wng = cal.achieved_mean_wng;
    res.pilot_trials = pilots;
    return res;
}

ExperimentSummary summarize(const ExperimentConfig &config, const std::vector<TrialRecord> &records,
                            const std::optional<DlResolution> &dl)
{
    ExperimentSummary s;
    s.n_trials = static_cast<int>(records.size());
    s.seed = config.seed;
    s.n_snapshots = config.n_snapshots;
    s.n_sensors = config.ula.n_sensors;
    s.dl = dl;

    for (Method m : config.methods) {
        MethodSummary ms;
        ms.method = m;
        std::vector<double> power, wng, total;
        for (const auto &r : records) {
            const MethodMetrics *mm = r.find(m);
            if (!mm)
                continue;
            if (!mm->ok()) {
                ++ms.n_errors;
                continue;
            }
            ++ms.n_ok;
            power.push_back(mm->out_power);
            wng.push_back(mm->wng);
            total.push_back(mm->total_out_power);
        }
        if (ms.n_ok > 0) {
            ms.median_out_power = lower_median(power);
            ms.mean_out_power = mean(power);
            ms.mean_wng = mean(wng);
            ms.median_total_out_power = lower_median(total);
            ms.mean_total_out_power = mean(total);
        } else {
            ms.median_out_power = ms.mean_out_power = ms.mean_wng = kNaN;
            ms.median_total_out_power = ms.mean_total_out_power = kNaN;
        }
        s.methods.push_back(ms);
    }

    const WeightVector ens = mvdr_weights(ensemble_covariance(config.ula, config.scene), config.ula);
    s.ensemble_out_power = interferer_output_power(ens, config.scene, config.ula, config.interferer_index);
    s.ensemble_wng = white_noise_gain(ens);
    s.ensemble_nd_db =
        notch_depth(ens, config.ula, config.scene.sources.at(config.interferer_index).direction_u);

    if (config.has_method(Method::UC) && config.has_method(Method::SMI)) {
        int wins = 0;
        int counted = 0;
        for (const auto &r : records) {
            const auto *uc = r.find(Method::UC);
            const auto *smi = r.find(Method::SMI);
            if (!uc || !smi || !uc->ok() || !smi->ok())
                continue;
            ++counted;
            if (uc->wng > smi->wng)
                ++wins;
        }
        if (counted > 0)
            s.uc_over_smi_wng_fraction = static_cast<double>(wins) / counted;
    }
    return s;
}

namespace {

void ensure_writable(const std::filesystem::path &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    const auto probe = dir / ".write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "probe") || !out.flush())
            throw IoError("output directory " + dir.string() + " is not writable");
    }
    std::filesystem::remove(probe, ec);
}

std::ofstream open_output(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void write_wng_hist(std::ostream &out, const ExperimentConfig &config,
                    const std::vector<TrialRecord> &records)
{
    const int bins = config.wng_hist_bins;
    const double top = config.ula.n_sensors;
    const double width = top / bins;
    std::vector<std::vector<long>> counts(config.methods.size(), std::vector<long>(bins, 0));
    for (const auto &r : records)
        for (std::size_t k = 0; k < config.methods.size(); ++k) {
            const auto *mm = r.find(config.methods[k]);
            if (!mm || !mm->ok())
                continue;
            const int b = std::clamp(static_cast<int>(std::floor(mm->wng / width)), 0, bins - 1);
            ++counts[k][static_cast<std::size_t>(b)];
        }

    out << "bin_lo,bin_hi";
    for (Method m : config.methods)
        out << ',' << to_string(m);
    out << '\n';
    for (int b = 0; b < bins; ++b) {
        out << format_double(b * width) << ',' << format_double(b == bins - 1 ? top : (b + 1) * width);
        for (const auto &c : counts)
            out << ',' << c[static_cast<std::size_t>(b)];
        out << '\n';
    }
}

void write_wng_scatter(std::ostream &out, const ExperimentConfig &config,
                       const std::vector<TrialRecord> &records)
{
    out << "trial";
    for (Method m : config.methods)
        out << ',' << to_string(m);
    out << '\n';
    for (const auto &r : records) {
        out << r.trial_index;
        for (Method m : config.methods) {
            const auto *mm = r.find(m);
            out << ',' << format_double(mm ? mm->wng : kNaN);
        }
        out << '\n';
    }
}

void write_exemplar(const ExperimentConfig &config, double dl_delta)
{
    const TrialWeights tw =
        compute_trial_weights(config, static_cast<std::uint64_t>(config.exemplar_trial), dl_delta);
    const std::vector<double> grid = uniform_u_grid(config.beampattern_points);
    for (const auto &[method, w] : tw.weights) {
        const std::string name = to_string(method);
        auto bp = open_output(config.output_dir / ("beampattern_" + name + ".csv"));
        write_beampattern_csv(bp, beampattern(w, config.ula, grid));

        ZeroSet zeros;
        try {
            zeros = method == Method::UC ? tw.uc_zeros : weights_to_polynomial(w).zeros();
        } catch (const std::exception &) {
            continue;
        }
        auto zf = open_output(config.output_dir / ("zeros_" + name + ".csv"));
        write_zeros_csv(zf, zeros);
    }
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig &config, const RunOptions &options)
{
    config.validate();
    if (options.write_artifacts)
        ensure_writable(config.output_dir);

    const std::optional<DlResolution> dl = resolve_dl(config);
    const double dl_delta = dl ? dl->delta : 0.0;

    ExperimentResult result;
    result.records.resize(static_cast<std::size_t>(config.n_trials));
    detail::parallel_for(result.records.size(), config.threads, [&](std::size_t i) {
        result.records[i] = run_trial(config, i, dl_delta);
    });
    result.summary = summarize(config, result.records, dl);

    if (!options.write_artifacts)
        return result;

    {
        auto out = open_output(config.output_dir / "trials.csv");
        write_trials_csv(out, result.records);
    }
    for (Method m : config.methods) {
        std::vector<double> power;
        for (const auto &r : result.records)
            if (const auto *mm = r.find(m); mm && mm->ok())
                power.push_back(mm->out_power);
        if (power.empty())
            continue;
        auto out = open_output(config.output_dir / ("ecdf_" + std::string(to_string(m)) + ".csv"));
        write_ecdf_csv(out, empirical_cdf(power));
    }
    {
        auto out = open_output(config.output_dir / "wng_hist.csv");
        write_wng_hist(out, config, result.records);
    }
    {
        auto out = open_output(config.output_dir / "wng_scatter.csv");
        write_wng_scatter(out, config, result.records);
    }
    write_exemplar(config, dl_delta);
    {
        auto out = open_output(config.output_dir / "summary.json");
        out << summary_to_json(result.summary) << '\n';
    }
    return result;
}

} // namespace ucmvdr
