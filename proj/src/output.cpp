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

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ucmvdr/experiment.hpp"
#include "ucmvdr/polynomial.hpp"

namespace ucmvdr {

namespace {

// RFC 4180 quoting for free-text fields.
std::string csv_field(const std::string &text)
{
    if (text.find_first_of(",\"\n\r") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    out += '"';
    return out;
}

nlohmann::json number_or_null(double x)
{
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

} // namespace

std::string format_double(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_trials_csv(std::ostream &out, const std::vector<TrialRecord> &records)
{
    out << "trial,seed,method,out_power,wng,nd_db,total_out_power,error\n";
    for (const auto &r : records)
        for (const auto &m : r.methods)
            out << r.trial_index << ',' << r.seed << ',' << to_string(m.method) << ','
                << format_double(m.out_power) << ',' << format_double(m.wng) << ','
                << format_double(m.nd_db) << ',' << format_double(m.total_out_power) << ','
                << csv_field(m.error) << '\n';
}

void write_ecdf_csv(std::ostream &out, const std::vector<EcdfPoint> &ecdf)
{
    out << "value,prob\n";
    for (const auto &p : ecdf)
        out << format_double(p.value) << ',' << format_double(p.probability) << '\n';
}

void write_beampattern_csv(std::ostream &out, const BeampatternSamples &samples)
{
    out << "u,re,im,db\n";
    for (std::size_t i = 0; i < samples.u_grid.size(); ++i)
        out << format_double(samples.u_grid[i]) << ',' << format_double(samples.values[i].real()) << ','
            << format_double(samples.values[i].imag()) << ',' << format_double(samples.power_db[i]) << '\n';
}

void write_zeros_csv(std::ostream &out, const ZeroSet &zeros)
{
    out << "angle,radius\n";
    for (const auto &z : zeros)
        out << format_double(principal_angle(z)) << ',' << format_double(std::abs(z)) << '\n';
}

std::string summary_to_json(const ExperimentSummary &summary)
{
    nlohmann::ordered_json j;
    j["n_trials"] = summary.n_trials;
    j["seed"] = summary.seed;
    j["n_sensors"] = summary.n_sensors;
    j["n_snapshots"] = summary.n_snapshots;

    nlohmann::ordered_json methods = nlohmann::ordered_json::object();
    for (const auto &m : summary.methods) {
        nlohmann::ordered_json e;
        e["n_ok"] = m.n_ok;
        e["n_errors"] = m.n_errors;
        e["median_out_power"] = number_or_null(m.median_out_power);
        e["mean_out_power"] = number_or_null(m.mean_out_power);
        e["mean_wng"] = number_or_null(m.mean_wng);
        e["median_total_out_power"] = number_or_null(m.median_total_out_power);
        e["mean_total_out_power"] = number_or_null(m.mean_total_out_power);
        methods[to_string(m.method)] = e;
    }
    j["methods"] = methods;

    if (summary.dl) {
        nlohmann::ordered_json dl;
        dl["delta"] = summary.dl->delta;
        dl["calibrated"] = summary.dl->calibrated;
        if (summary.dl->calibrated) {
            dl["target_mean_wng"] = summary.dl->target_mean_wng;
            dl["pilot_mean_wng"] = summary.dl->achieved_mean_wng;
            dl["pilot_trials"] = summary.dl->pilot_trials;
        }
        j["dl"] = dl;
    } else {
        j["dl"] = nullptr;
    }

    j["ensemble"] = {{"out_power", number_or_null(summary.ensemble_out_power)},
                     {"wng", number_or_null(summary.ensemble_wng)},
                     {"nd_db", number_or_null(summary.ensemble_nd_db)}};
    if (summary.uc_over_smi_wng_fraction)
        j["uc_over_smi_wng_fraction"] = *summary.uc_over_smi_wng_fraction;
    return j.dump(2);
}

} // namespace ucmvdr
