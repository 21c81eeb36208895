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

#include <span>
#include <utility>
#include <vector>

#include "ucmvdr/beamformers.hpp"

namespace ucmvdr {

/// dB floor used for exact nulls so values stay finite in CSV output.
inline constexpr double kDbFloor = -400.0;

struct BeampatternSamples {
    std::vector<double> u_grid;
    std::vector<Complex> values;
    std::vector<double> power_db; // 20 log10 |B|, floored
};

/// B(u) = w^H v(u) on a strictly increasing grid inside [-1, 1].
BeampatternSamples beampattern(const WeightVector &w, const UlaConfig &cfg,
                               std::span<const double> u_grid);

/// Single-point beampattern.
Complex beampattern_at(const WeightVector &w, const UlaConfig &cfg, double u);

/// n equally spaced points from -1 to 1 inclusive.
std::vector<double> uniform_u_grid(int n_points);

/// 10 log10 |B(u1)|^2, floored at kDbFloor.
double notch_depth(const WeightVector &w, const UlaConfig &cfg, double u_interferer);

/// 1 / ||w||^2. Throws DomainError unless |w^H v0| = 1 within 1e-8.
double white_noise_gain(const WeightVector &w);

/// sigma_k^2 |B(u_k)|^2 for source k of the scene.
double interferer_output_power(const WeightVector &w, const Scene &scene, const UlaConfig &cfg,
                               std::size_t interferer_index = 0);

/// w^H Sigma w.
double total_output_power(const WeightVector &w, const CovarianceMatrix &cov);

struct EcdfPoint {
    double value;
    double probability;
};

/// Right-continuous ECDF: the k-th order statistic carries probability k/n.
std::vector<EcdfPoint> empirical_cdf(std::span<const double> samples);

/// Lower median: the ceil(n/2)-th order statistic.
double lower_median(std::span<const double> samples);

double mean(std::span<const double> samples);

} // namespace ucmvdr
