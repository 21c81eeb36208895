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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "test_util.hpp"
#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/errors.hpp"
#include "ucmvdr/metrics.hpp"
#include "ucmvdr/random.hpp"

using namespace ucmvdr;
using ucmvdr::test::ula;

// Frozen from the first calibration run (seed 20240601, 1000 pilots).
constexpr double kRegressionTarget = 6.1512164769300179;
constexpr double kRegressionDelta = 0.14330125702369628;

TEST_CASE("sample_covariance: single snapshot outer product")
{
    SnapshotMatrix x{CMatrix(2, 1), 0};
    x.data << Complex(1.0, 0.0), Complex(0.0, 1.0);
    const auto s = sample_covariance(x);
    CMatrix expected(2, 2);
    expected << Complex(1, 0), Complex(0, -1), Complex(0, 1), Complex(1, 0);
    CHECK((s.matrix() - expected).norm() == 0.0);
    CHECK(s.kind() == CovarianceKind::Sample);
    CHECK(s.snapshots_used() == 1);
}

TEST_CASE("sample_covariance: quadratic homogeneity and permutation invariance")
{
    auto x = generate_snapshots(ula(5), Scene{{{0.2, 3.0}}, 1.0}, 9, 11);
    const auto s = sample_covariance(x);

    SnapshotMatrix scaled{x.data * 2.0, x.seed};
    CHECK((sample_covariance(scaled).matrix() - 4.0 * s.matrix()).norm() < 1e-13 * s.matrix().norm());

    std::vector<int> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(5);
    std::shuffle(perm.begin(), perm.end(), rng);
    SnapshotMatrix permuted{CMatrix(5, 9), x.seed};
    for (int c = 0; c < 9; ++c)
        permuted.data.col(c) = x.data.col(perm[static_cast<std::size_t>(c)]);
    CHECK((sample_covariance(permuted).matrix() - s.matrix()).norm() < 1e-13 * s.matrix().norm());
}

TEST_CASE("sample_covariance: exactly Hermitian, and nonsingular for L = N + 1")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = sample_covariance(generate_snapshots(ula(11), test::reference_scene(), 12, seed));
        CHECK((s.matrix() - s.matrix().adjoint()).norm() == 0.0);
        CHECK(s.eigenvalues()(0) > 0.0);
    }
}

TEST_CASE("sample_covariance: 1e6 white snapshots within 1% of identity")
{
    const int n = 4;
    const auto s = sample_covariance(generate_snapshots(ula(n), Scene{{}, 1.0}, 1'000'000, 77));
    CHECK((s.matrix() - CMatrix::Identity(n, n)).norm() / std::sqrt(double(n)) < 0.01);
}

TEST_CASE("CovarianceMatrix rejects non-Hermitian input")
{
    CMatrix m = CMatrix::Identity(3, 3);
    m(0, 1) = 0.5;
    CHECK_THROWS_AS(CovarianceMatrix(m, CovarianceKind::Sample), DomainError);
    CHECK_THROWS_AS(CovarianceMatrix(CMatrix(2, 3), CovarianceKind::Sample), DomainError);
}

TEST_CASE("diagonal_load")
{
    const CovarianceMatrix eye(CMatrix::Identity(3, 3), CovarianceKind::Sample, 0.0, 5);

    const auto same = diagonal_load(eye, 0.0);
    CHECK(same.kind() == CovarianceKind::Loaded);
    CHECK(same.matrix() == eye.matrix());
    CHECK(same.snapshots_used() == 5);

    const auto two = diagonal_load(eye, 1.0);
    CHECK(two.matrix() == (2.0 * CMatrix::Identity(3, 3)).eval());
    CHECK(two.loading_factor() == 1.0);

    CHECK_THROWS_AS(diagonal_load(eye, -1e-3), DomainError);
}

TEST_CASE("diagonal_load: eigenvalues shift by delta")
{
    std::mt19937_64 rng(3);
    const auto s = test::random_hpd(7, rng);
    const double delta = 0.37;
    const Eigen::VectorXd before = s.eigenvalues();
    const Eigen::VectorXd after = diagonal_load(s, delta).eigenvalues();
    CHECK((after - before - Eigen::VectorXd::Constant(7, delta)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("diagonal_load: loading composes additively")
{
    // Dyadic entries and loads keep every sum exact in binary floating point.
    CMatrix m(2, 2);
    m << Complex(1.5, 0), Complex(0.25, -0.5), Complex(0.25, 0.5), Complex(2.0, 0);
    const CovarianceMatrix s(m, CovarianceKind::Sample, 0.0, 3);
    const auto once = diagonal_load(s, 0.75);
    const auto twice = diagonal_load(diagonal_load(s, 0.5), 0.25);
    CHECK(once.matrix() == twice.matrix());
    CHECK(once.loading_factor() == twice.loading_factor());

    // General values agree to rounding.
    std::mt19937_64 rng(8);
    const auto r = test::random_hpd(6, rng);
    const auto a = diagonal_load(r, 0.1 + 0.2);
    const auto b = diagonal_load(diagonal_load(r, 0.1), 0.2);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 4e-16 * r.matrix().cwiseAbs().maxCoeff() + 1e-16);
}

namespace {

// Pilot mean DL WNG computed directly, independent of the bisection loop.
double pilot_mean_dl_wng(const UlaConfig &cfg, const Scene &scene, int l, int pilots, std::uint64_t seed,
                         double delta)
{
    double sum = 0.0;
    for (int i = 0; i < pilots; ++i) {
        const auto scm = sample_covariance(generate_snapshots(cfg, scene, l, pilot_seed(seed, i)));
        sum += white_noise_gain(mvdr_weights(diagonal_load(scm, delta), cfg));
    }
    return sum / pilots;
}

double pilot_mean_uc_wng(const UlaConfig &cfg, const Scene &scene, int l, int pilots, std::uint64_t seed)
{
    double sum = 0.0;
    for (int i = 0; i < pilots; ++i) {
        const auto scm = sample_covariance(generate_snapshots(cfg, scene, l, pilot_seed(seed, i)));
        sum += white_noise_gain(uc_mvdr_weights(scm, cfg));
    }
    return sum / pilots;
}

} // namespace

TEST_CASE("calibrate_dl_factor: limiting targets")
{
    const auto cfg = ula(11);
    const Scene scene = test::reference_scene();
    const std::uint64_t seed = 4242;

    SUBCASE("target N lands on the upper bracket")
    {
        const auto r = calibrate_dl_factor(cfg, scene, 12, 100, 11.0, seed);
        CHECK(r.delta == doctest::Approx(1e6));
        CHECK(std::abs(r.achieved_mean_wng - 11.0) <= 0.11);
    }
    SUBCASE("target equal to the unloaded SMI mean lands near zero")
    {
        const double smi = pilot_mean_dl_wng(cfg, scene, 12, 100, seed, 0.0);
        const auto r = calibrate_dl_factor(cfg, scene, 12, 100, smi, seed);
        CHECK(r.delta <= 1e-3);
        CHECK(std::abs(r.achieved_mean_wng - smi) <= 0.01 * smi);
    }
}

TEST_CASE("calibrate_dl_factor: errors")
{
    const auto cfg = ula(11);
    const Scene scene = test::reference_scene();
    CHECK_THROWS_AS(calibrate_dl_factor(cfg, scene, 12, 99, 5.0, 1), DomainError);
    CHECK_THROWS_AS(calibrate_dl_factor(cfg, scene, 12, 100, 0.0, 1), DomainError);
    CHECK_THROWS_AS(calibrate_dl_factor(cfg, scene, 12, 100, 11.5, 1), DomainError);
    // Far below the smallest reachable mean WNG.
    CHECK_THROWS_AS(calibrate_dl_factor(cfg, scene, 12, 100, 0.01, 1), CalibrationError);
    try {
        calibrate_dl_factor(cfg, scene, 12, 100, 0.01, 1);
    } catch (const CalibrationError &e) {
        CHECK(e.min_reachable() > 0.01);
        CHECK(e.max_reachable() <= 11.0);
    }
}

TEST_CASE("calibrate_dl_factor: single-interferer scenario regression")
{
    const auto cfg = ula(11);
    const Scene scene = test::reference_scene();
    const std::uint64_t seed = 20240601;
    const int pilots = 1000;

    const double target = pilot_mean_uc_wng(cfg, scene, 12, pilots, seed);
    const auto r = calibrate_dl_factor(cfg, scene, 12, pilots, target, seed);

    // Independent re-evaluation at the returned delta.
    const double check = pilot_mean_dl_wng(cfg, scene, 12, pilots, seed, r.delta);
    CHECK(std::abs(check - target) <= 0.01 * target);
    CHECK(check == doctest::Approx(r.achieved_mean_wng).epsilon(1e-12));

    CHECK(target == doctest::Approx(kRegressionTarget).epsilon(1e-9));
    CHECK(r.delta == doctest::Approx(kRegressionDelta).epsilon(1e-9));
}
