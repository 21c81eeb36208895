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

#include "ucmvdr/array_model.hpp"

namespace ucmvdr {

enum class CovarianceKind { Ensemble, Sample, Loaded };

const char *to_string(CovarianceKind kind);

/// Hermitian N x N covariance tagged with its provenance.
class CovarianceMatrix {
public:
    /// Validates squareness and Hermitian symmetry (1e-12 relative).
    CovarianceMatrix(CMatrix matrix, CovarianceKind kind, double loading_factor = 0.0,
                     int snapshots_used = 0);

    const CMatrix &matrix() const { return matrix_; }
    CovarianceKind kind() const { return kind_; }
    double loading_factor() const { return loading_factor_; }
    int snapshots_used() const { return snapshots_used_; }
    int size() const { return static_cast<int>(matrix_.rows()); }

    /// Ascending real eigenvalues.
    Eigen::VectorXd eigenvalues() const;
    double trace() const { return matrix_.diagonal().real().sum(); }

private:
    CMatrix matrix_;
    CovarianceKind kind_;
    double loading_factor_;
    int snapshots_used_;
};

/// S = (1/L) X X^H.
CovarianceMatrix sample_covariance(const SnapshotMatrix &snapshots);

/// S + delta I. The loading factor accumulates when applied to an already
/// loaded matrix.
CovarianceMatrix diagonal_load(const CovarianceMatrix &cov, double delta);

struct CalibrationResult {
    double delta = 0.0;
    double achieved_mean_wng = 0.0;
    double target_mean_wng = 0.0;
    int iterations = 0;
};

struct CalibrationOptions {
    /// Relative tolerance on the pilot mean WNG.
    double relative_tolerance = 0.01;
    /// Bracket in units of the noise power: [lo, hi] * sigma_w^2.
    double bracket_lo = 1e-6;
    double bracket_hi = 1e6;
    int max_iterations = 200;
    int threads = 1;
};

/// Finds delta such that the mean WNG of the DL MVDR beamformer over
/// n_pilot_trials pilot snapshot sets matches target_mean_wng within the
/// relative tolerance. Bisection on log10(delta); the mean WNG is
/// nondecreasing in delta. Pilot seeds come from pilot_seed(seed, i).
///
/// Throws CalibrationError when the target is outside the WNG range reachable
/// inside the bracket, DomainError on bad arguments.
CalibrationResult calibrate_dl_factor(const UlaConfig &cfg, const Scene &scene, int n_snapshots,
                                      int n_pilot_trials, double target_mean_wng, std::uint64_t seed,
                                      const CalibrationOptions &options = {});

} // namespace ucmvdr
