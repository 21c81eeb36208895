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

#include "ucmvdr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ucmvdr/errors.hpp"

namespace ucmvdr {

namespace {

double to_db_power(double power)
{
    if (!(power > 0.0))
        return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(power));
}

} // namespace

Complex beampattern_at(const WeightVector &w, const UlaConfig &cfg, double u)
{
    if (w.size() != cfg.n_sensors)
        throw DomainError("weight length does not match n_sensors");
    return w.weights.dot(steering_vector(cfg, u)); // w^H v(u)
}

BeampatternSamples beampattern(const WeightVector &w, const UlaConfig &cfg, std::span<const double> u_grid)
{
    for (std::size_t i = 1; i < u_grid.size(); ++i)
        if (!(u_grid[i] > u_grid[i - 1]))
            throw DomainError("beampattern grid must be strictly increasing");

    BeampatternSamples out;
    out.u_grid.assign(u_grid.begin(), u_grid.end());
    out.values.reserve(u_grid.size());
    out.power_db.reserve(u_grid.size());
    for (double u : u_grid) {
        const Complex b = beampattern_at(w, cfg, u);
        out.values.push_back(b);
        out.power_db.push_back(to_db_power(std::norm(b)));
    }
    return out;
}

std::vector<double> uniform_u_grid(int n_points)
{
    if (n_points < 2)
        throw DomainError("grid needs at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        grid[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n_points - 1);
    grid.back() = 1.0;
    return grid;
}

double notch_depth(const WeightVector &w, const UlaConfig &cfg, double u_interferer)
{
    return to_db_power(std::norm(beampattern_at(w, cfg, u_interferer)));
}

double white_noise_gain(const WeightVector &w)
{
    const Complex look_gain = beampattern_at(w, w.ula, w.ula.look_direction_u);
    if (std::abs(std::abs(look_gain) - 1.0) > 1e-8)
        throw DomainError("white noise gain requires unit look-direction gain, got |w^H v0| = " +
                          std::to_string(std::abs(look_gain)));
    return 1.0 / w.weights.squaredNorm();
}

double interferer_output_power(const WeightVector &w, const Scene &scene, const UlaConfig &cfg,
                               std::size_t interferer_index)
{
    if (scene.sources.empty())
        throw DomainError("interferer output power needs a scene with at least one source");
    if (interferer_index >= scene.sources.size())
        throw DomainError("interferer index " + std::to_string(interferer_index) + " out of range");
    const SourceSpec &src = scene.sources[interferer_index];
    return src.power * std::norm(beampattern_at(w, cfg, src.direction_u));
}

double total_output_power(const WeightVector &w, const CovarianceMatrix &cov)
{
    return w.weights.dot(cov.matrix() * w.weights).real();
}

std::vector<EcdfPoint> empirical_cdf(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("empirical CDF of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<EcdfPoint> out;
    out.reserve(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k)
        out.push_back({sorted[k], static_cast<double>(k + 1) / n});
    return out;
}

double lower_median(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("median of an empty sample");
    std::vector<double> v(samples.begin(), samples.end());
    const std::size_t k = (v.size() + 1) / 2 - 1;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
}

double mean(std::span<const double> samples)
{
    if (samples.empty())
        throw DomainError("mean of an empty sample");
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    return sum / static_cast<double>(samples.size());
}

} // namespace ucmvdr
