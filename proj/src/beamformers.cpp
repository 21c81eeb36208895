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

#include "ucmvdr/beamformers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "ucmvdr/errors.hpp"
#include "ucmvdr/polynomial.hpp"

namespace ucmvdr {

const char *to_string(Method method)
{
    switch (method) {
    case Method::CBF: return "CBF";
    case Method::MVDR: return "MVDR";
    case Method::SMI: return "SMI";
    case Method::DL: return "DL";
    case Method::UC: return "UC";
    }
    return "?";
}

Method parse_method(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (Method m : {Method::CBF, Method::MVDR, Method::SMI, Method::DL, Method::UC})
        if (upper == to_string(m))
            return m;
    throw DomainError("unknown beamformer method '" + std::string(name) +
                      "' (expected CBF, MVDR, SMI, DL or UC)");
}

WeightVector cbf_weights(const UlaConfig &cfg)
{
    cfg.validate();
    const CVector v0 = steering_vector(cfg, cfg.look_direction_u);
    return {v0 / static_cast<double>(cfg.n_sensors), Method::CBF, cfg, true};
}

namespace {

Method method_for(CovarianceKind kind)
{
    switch (kind) {
    case CovarianceKind::Ensemble: return Method::MVDR;
    case CovarianceKind::Sample: return Method::SMI;
    case CovarianceKind::Loaded: return Method::DL;
    }
    return Method::MVDR;
}

CVector pseudo_inverse_solve(const CMatrix &a, const CVector &b)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
    if (eig.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    const Eigen::VectorXd &ev = eig.eigenvalues();
    const double cutoff = std::max(std::abs(ev.maxCoeff()), 0.0) * a.rows() *
                          std::numeric_limits<double>::epsilon();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        if (ev(k) > cutoff)
            inv(k) = 1.0 / ev(k);
    const CMatrix &q = eig.eigenvectors();
    return q * (inv.cast<Complex>().asDiagonal() * (q.adjoint() * b));
}

} // namespace

WeightVector mvdr_weights(const CovarianceMatrix &cov, const UlaConfig &cfg, const MvdrOptions &options)
{
    cfg.validate();
    if (cov.size() != cfg.n_sensors)
        throw DomainError("covariance size " + std::to_string(cov.size()) +
                          " does not match n_sensors " + std::to_string(cfg.n_sensors));
    const CVector v0 = steering_vector(cfg, cfg.look_direction_u);

    CVector x;
    const double min_eig = cov.eigenvalues()(0);
    const double threshold = 1e-12 * cov.trace() / cov.size();
    if (!(min_eig > threshold)) {
        if (!options.allow_pseudo_inverse) {
            std::ostringstream msg;
            msg << "singular covariance: minimum eigenvalue " << min_eig << " <= " << threshold
                << " (1e-12 * trace / N)";
            throw NumericalError(msg.str());
        }
        x = pseudo_inverse_solve(cov.matrix(), v0);
    } else {
        Eigen::LLT<CMatrix> llt(cov.matrix());
        if (llt.info() != Eigen::Success)
            throw NumericalError("Cholesky factorization failed (min eigenvalue " +
                                 std::to_string(min_eig) + ")");
        x = llt.solve(v0);
    }

    const Complex denom = v0.dot(x); // v0^H x, real positive for PD covariance
    if (!(denom.real() > 0.0) || !std::isfinite(denom.real()))
        throw NumericalError("MVDR normalization v0^H R^-1 v0 is not positive");
    WeightVector w{x / denom, method_for(cov.kind()), cfg, true};
    if (!w.weights.allFinite())
        throw NumericalError("MVDR weights are not finite");
    return w;
}

WeightVector weights_from_zeros(const ZeroSet &zeros, const UlaConfig &cfg, Method method)
{
    cfg.validate();
    if (static_cast<int>(zeros.size()) != cfg.n_sensors - 1)
        throw DomainError("expected " + std::to_string(cfg.n_sensors - 1) + " zeros, got " +
                          std::to_string(zeros.size()));
    // P(z) = sum c_n^* z^-n, so the weights are the conjugated coefficients.
    const CVector c = zeros_to_coefficients(zeros).conjugate();
    const CVector v0 = steering_vector(cfg, cfg.look_direction_u);
    const double gain = std::abs(c.dot(v0)); // |c^H v0|
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw NumericalError("polynomial has a zero in the look direction; cannot normalize");
    return {c / gain, method, cfg, true};
}

ZeroSet uc_mvdr_zeros(const CovarianceMatrix &scm, const UlaConfig &cfg, const UcMvdrOptions &options)
{
    if (scm.kind() == CovarianceKind::Ensemble ||
        (scm.kind() == CovarianceKind::Loaded && !options.accept_loaded))
        throw DomainError(std::string("UC MVDR expects a sample covariance, got ") +
                          to_string(scm.kind()));
    if (cfg.spacing_wavelengths != 0.5)
        throw DomainError("UC MVDR requires half-wavelength spacing (z = exp(j pi u))");

    const WeightVector smi = mvdr_weights(scm, cfg, options.mvdr);
    const ArrayPolynomial poly = weights_to_polynomial(smi);
    return project_zeros_to_unit_circle(poly.zeros(), cfg.n_sensors);
}

WeightVector uc_mvdr_weights(const CovarianceMatrix &scm, const UlaConfig &cfg,
                             const UcMvdrOptions &options)
{
    return weights_from_zeros(uc_mvdr_zeros(scm, cfg, options), cfg, Method::UC);
}

} // namespace ucmvdr
