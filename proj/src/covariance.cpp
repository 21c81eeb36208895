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

#include "ucmvdr/covariance.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>

#include "parallel.hpp"
#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/errors.hpp"
#include "ucmvdr/metrics.hpp"
#include "ucmvdr/random.hpp"

namespace ucmvdr {

const char *to_string(CovarianceKind kind)
{
    switch (kind) {
    case CovarianceKind::Ensemble: return "ensemble";
    case CovarianceKind::Sample: return "sample";
    case CovarianceKind::Loaded: return "loaded";
    }
    return "unknown";
}

CovarianceMatrix::CovarianceMatrix(CMatrix matrix, CovarianceKind kind, double loading_factor,
                                   int snapshots_used)
    : matrix_(std::move(matrix)), kind_(kind), loading_factor_(loading_factor),
      snapshots_used_(snapshots_used)
{
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0)
        throw DomainError("covariance matrix must be square and nonempty");
    if (!matrix_.allFinite())
        throw NumericalError("covariance matrix has non-finite entries");
    const double scale = matrix_.norm();
    const double asym = (matrix_ - matrix_.adjoint()).norm();
    if (asym > 1e-12 * scale)
        throw DomainError("covariance matrix is not Hermitian (relative asymmetry " +
                          std::to_string(asym / scale) + ")");
}

Eigen::VectorXd CovarianceMatrix::eigenvalues() const
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
}

CovarianceMatrix sample_covariance(const SnapshotMatrix &snapshots)
{
    const auto &x = snapshots.data;
    const int n = static_cast<int>(x.rows());
    const int l = static_cast<int>(x.cols());
    if (l < 1)
        throw DomainError("sample covariance needs at least one snapshot");

    CMatrix s = CMatrix::Zero(n, n);
    s.selfadjointView<Eigen::Lower>().rankUpdate(x, 1.0 / l);
    // rankUpdate fills one triangle; mirror it so the stored matrix is exactly Hermitian.
    for (int c = 0; c < n; ++c) {
        s(c, c) = s(c, c).real();
        for (int r = 0; r < c; ++r)
            s(r, c) = std::conj(s(c, r));
    }
    return CovarianceMatrix(std::move(s), CovarianceKind::Sample, 0.0, l);
}

CovarianceMatrix diagonal_load(const CovarianceMatrix &cov, double delta)
{
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw DomainError("loading factor must be finite and non-negative, got " +
                          std::to_string(delta));
    CMatrix loaded = cov.matrix();
    loaded.diagonal().array() += delta;
    return CovarianceMatrix(std::move(loaded), CovarianceKind::Loaded,
                            cov.loading_factor() + delta, cov.snapshots_used());
}

namespace {

double mean_dl_wng(const std::vector<CovarianceMatrix> &pilots, const UlaConfig &cfg, double delta)
{
    double sum = 0.0;
    for (const auto &scm : pilots)
        sum += white_noise_gain(mvdr_weights(diagonal_load(scm, delta), cfg));
    return sum / static_cast<double>(pilots.size());
}

} // namespace

CalibrationResult calibrate_dl_factor(const UlaConfig &cfg, const Scene &scene, int n_snapshots,
                                      int n_pilot_trials, double target_mean_wng, std::uint64_t seed,
                                      const CalibrationOptions &options)
{
    cfg.validate();
    scene.validate();
    if (n_pilot_trials < 100)
        throw DomainError("calibration needs at least 100 pilot trials, got " +
                          std::to_string(n_pilot_trials));
    if (!(target_mean_wng > 0.0) || target_mean_wng > cfg.n_sensors)
        throw DomainError("target mean WNG must lie in (0, N], got " +
                          std::to_string(target_mean_wng));

    std::vector<CovarianceMatrix> pilots;
    {
        std::vector<std::optional<CovarianceMatrix>> slots(static_cast<std::size_t>(n_pilot_trials));
        detail::parallel_for(slots.size(), options.threads, [&](std::size_t i) {
            slots[i] = sample_covariance(
                generate_snapshots(cfg, scene, n_snapshots, pilot_seed(seed, i)));
        });
        pilots.reserve(slots.size());
        for (auto &s : slots)
            pilots.push_back(std::move(*s));
    }

    const double noise = scene.noise_power;
    double log_lo = std::log10(options.bracket_lo * noise);
    double log_hi = std::log10(options.bracket_hi * noise);
    const double tol = options.relative_tolerance * target_mean_wng;

    CalibrationResult result;
    result.target_mean_wng = target_mean_wng;

    const double wng_lo = mean_dl_wng(pilots, cfg, std::pow(10.0, log_lo));
    const double wng_hi = mean_dl_wng(pilots, cfg, std::pow(10.0, log_hi));
    if (std::abs(wng_lo - target_mean_wng) <= tol) {
        result.delta = std::pow(10.0, log_lo);
        result.achieved_mean_wng = wng_lo;
        return result;
    }
    if (std::abs(wng_hi - target_mean_wng) <= tol) {
        result.delta = std::pow(10.0, log_hi);
        result.achieved_mean_wng = wng_hi;
        return result;
    }
    if (target_mean_wng < wng_lo || target_mean_wng > wng_hi) {
        std::ostringstream msg;
        msg << "target mean WNG " << target_mean_wng << " unreachable; loading in ["
            << std::pow(10.0, log_lo) << ", " << std::pow(10.0, log_hi)
            << "] gives mean WNG in [" << wng_lo << ", " << wng_hi << "]";
        throw CalibrationError(msg.str(), wng_lo, wng_hi);
    }

    for (int it = 1; it <= options.max_iterations; ++it) {
        const double log_mid = 0.5 * (log_lo + log_hi);
        const double delta = std::pow(10.0, log_mid);
        const double wng = mean_dl_wng(pilots, cfg, delta);
        result.iterations = it;
        result.delta = delta;
        result.achieved_mean_wng = wng;
        if (std::abs(wng - target_mean_wng) <= tol)
            return result;
        if (wng < target_mean_wng)
            log_lo = log_mid;
        else
            log_hi = log_mid;
    }
    throw CalibrationError("diagonal loading calibration did not converge", wng_lo, wng_hi);
}

} // namespace ucmvdr
