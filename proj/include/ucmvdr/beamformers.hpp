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

#include <string>
#include <string_view>

#include "ucmvdr/array_model.hpp"
#include "ucmvdr/covariance.hpp"

namespace ucmvdr {

enum class Method { CBF, MVDR, SMI, DL, UC };

const char *to_string(Method method);
/// Case-insensitive; throws DomainError on unknown names.
Method parse_method(std::string_view name);

/// Beamformer weights for a given array. Every factory below returns weights
/// with |w^H v0| = 1.
struct WeightVector {
    CVector weights;
    Method method = Method::CBF;
    UlaConfig ula;
    bool distortionless = true;

    int size() const { return static_cast<int>(weights.size()); }
    double look_direction_u() const { return ula.look_direction_u; }
};

/// Delay-and-sum: w = v0 / N.
WeightVector cbf_weights(const UlaConfig &cfg);

struct MvdrOptions {
    /// Use the Moore-Penrose pseudo-inverse instead of refusing a singular
    /// covariance. Experimental; not used by the experiment harness.
    bool allow_pseudo_inverse = false;
};

/// w = Sigma^-1 v0 / (v0^H Sigma^-1 v0), through a Hermitian factorization.
/// The method tag follows cov.kind(): Ensemble -> MVDR, Sample -> SMI,
/// Loaded -> DL. Throws NumericalError naming the minimum eigenvalue if it is
/// below 1e-12 * trace / N.
WeightVector mvdr_weights(const CovarianceMatrix &cov, const UlaConfig &cfg,
                          const MvdrOptions &options = {});

struct UcMvdrOptions {
    /// Accept a diagonally loaded covariance as the starting point.
    bool accept_loaded = false;
    MvdrOptions mvdr;
};

/// Unit circle MVDR:
///   1. SMI weights from the sample covariance,
///   2. zeros of the conjugate-weight polynomial,
///   3. radial projection to the unit circle with the main-lobe guard,
///   4. expansion of prod (1 - zeta_n z^-1) = sum c_n^* z^-n,
///   5. w = c / |c^H v0|.
/// Requires d/lambda = 0.5.
WeightVector uc_mvdr_weights(const CovarianceMatrix &scm, const UlaConfig &cfg,
                             const UcMvdrOptions &options = {});

/// The projected zero set used by uc_mvdr_weights, exposed for plotting.
ZeroSet uc_mvdr_zeros(const CovarianceMatrix &scm, const UlaConfig &cfg,
                      const UcMvdrOptions &options = {});

/// Weights c = conj(zeros_to_coefficients(zeros)) rescaled to unit look gain.
WeightVector weights_from_zeros(const ZeroSet &zeros, const UlaConfig &cfg, Method method);

} // namespace ucmvdr
