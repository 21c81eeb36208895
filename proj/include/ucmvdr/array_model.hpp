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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ucmvdr {

using Complex = std::complex<double>;
using ZeroSet = std::vector<Complex>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Uniform linear array geometry and look direction. Directions are always
/// direction cosines u = cos(theta) in [-1, 1].
struct UlaConfig {
    int n_sensors = 11;
    double spacing_wavelengths = 0.5;
    double look_direction_u = 0.0;
    /// Permit d/lambda > 0.5 (grating lobes inside visible space).
    bool allow_grating_lobes = false;

    /// Throws DomainError if any invariant is violated.
    void validate() const;
};

struct SourceSpec {
    double direction_u = 0.0;
    double power = 0.0; // linear units, sigma_i^2
};

/// Uncorrelated planewave sources in spatially white noise.
struct Scene {
    std::vector<SourceSpec> sources;
    double noise_power = 1.0;

    void validate() const;
};

/// N x L snapshot block, one column per snapshot.
struct SnapshotMatrix {
    CMatrix data;
    std::uint64_t seed = 0;

    int n_sensors() const { return static_cast<int>(data.rows()); }
    int n_snapshots() const { return static_cast<int>(data.cols()); }
};

class CovarianceMatrix;

/// Array manifold vector v(u): element n is exp(-j 2 pi (d/lambda) n u).
CVector steering_vector(const UlaConfig &cfg, double u);

/// Sigma = sum_i sigma_i^2 v_i v_i^H + sigma_w^2 I.
CovarianceMatrix ensemble_covariance(const UlaConfig &cfg, const Scene &scene);

/// Draws L independent snapshots x = sum_i a_i v_i + n with a_i ~ CN(0, sigma_i^2)
/// redrawn every snapshot and n ~ CN(0, sigma_w^2 I). Deterministic in seed.
SnapshotMatrix generate_snapshots(const UlaConfig &cfg, const Scene &scene, int n_snapshots,
                                  std::uint64_t seed);

} // namespace ucmvdr
