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

#include "ucmvdr/array_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ucmvdr/covariance.hpp"
#include "ucmvdr/errors.hpp"
#include "ucmvdr/random.hpp"

namespace ucmvdr {

namespace {

void check_direction(double u, const char *what)
{
    if (!(std::abs(u) <= 1.0))
        throw DomainError(std::string(what) + " must lie in [-1, 1], got " + std::to_string(u));
}

} // namespace

void UlaConfig::validate() const
{
    if (n_sensors < 2)
        throw DomainError("n_sensors must be at least 2, got " + std::to_string(n_sensors));
    if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
        throw DomainError("spacing_wavelengths must be positive");
    if (spacing_wavelengths > 0.5 && !allow_grating_lobes)
        throw DomainError("spacing_wavelengths > 0.5 admits grating lobes; set allow_grating_lobes");
    check_direction(look_direction_u, "look_direction_u");
}

void Scene::validate() const
{
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw DomainError("noise_power must be positive");
    for (const auto &s : sources) {
        check_direction(s.direction_u, "source direction_u");
        if (!(s.power >= 0.0) || !std::isfinite(s.power))
            throw DomainError("source power must be finite and non-negative");
    }
}

CVector steering_vector(const UlaConfig &cfg, double u)
{
    check_direction(u, "direction u");
    const int n = cfg.n_sensors;
    const double phase_step = -2.0 * std::numbers::pi * cfg.spacing_wavelengths * u;
    CVector v(n);
    v(0) = 1.0;
    for (int k = 1; k < n; ++k)
        v(k) = std::polar(1.0, phase_step * k);
    return v;
}

CovarianceMatrix ensemble_covariance(const UlaConfig &cfg, const Scene &scene)
{
    cfg.validate();
    scene.validate();
    const int n = cfg.n_sensors;
    CMatrix sigma = CMatrix::Zero(n, n);
    for (const auto &s : scene.sources) {
        const CVector v = steering_vector(cfg, s.direction_u);
        // Fill the upper triangle and mirror so the result is exactly Hermitian.
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < c; ++r)
                sigma(r, c) += s.power * v(r) * std::conj(v(c));
        for (int k = 0; k < n; ++k)
            sigma(k, k) += s.power * std::norm(v(k));
    }
    for (int k = 0; k < n; ++k)
        sigma(k, k) = sigma(k, k).real() + scene.noise_power;
    for (int c = 0; c < n; ++c)
        for (int r = c + 1; r < n; ++r)
            sigma(r, c) = std::conj(sigma(c, r));
    return CovarianceMatrix(std::move(sigma), CovarianceKind::Ensemble);
}

SnapshotMatrix generate_snapshots(const UlaConfig &cfg, const Scene &scene, int n_snapshots,
                                  std::uint64_t seed)
{
    if (n_snapshots < 1)
        throw DomainError("n_snapshots must be at least 1, got " + std::to_string(n_snapshots));
    cfg.validate();
    scene.validate();

    const int n = cfg.n_sensors;
    std::vector<CVector> manifolds;
    std::vector<ComplexNormal> amplitudes;
    for (const auto &s : scene.sources) {
        manifolds.push_back(steering_vector(cfg, s.direction_u));
        amplitudes.emplace_back(s.power);
    }
    ComplexNormal noise(scene.noise_power);

    Engine engine(seed);
    SnapshotMatrix out{CMatrix(n, n_snapshots), seed};
    for (int l = 0; l < n_snapshots; ++l) {
        auto col = out.data.col(l);
        col.setZero();
        for (std::size_t i = 0; i < manifolds.size(); ++i)
            col += amplitudes[i](engine) * manifolds[i];
        for (int k = 0; k < n; ++k)
            col(k) += noise(engine);
    }
    return out;
}

} // namespace ucmvdr
