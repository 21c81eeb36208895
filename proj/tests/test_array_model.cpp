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

#include <cmath>
#include <numbers>

#include "test_util.hpp"
#include "ucmvdr/errors.hpp"

using namespace ucmvdr;
using ucmvdr::test::ula;

TEST_CASE("steering_vector: broadside and endfire")
{
    const CVector v = steering_vector(ula(3), 0.0);
    for (int k = 0; k < 3; ++k)
        CHECK(v(k) == Complex(1.0, 0.0));

    const CVector e = steering_vector(ula(2), 1.0);
    CHECK(e(0) == Complex(1.0, 0.0));
    CHECK(std::abs(e(1) - Complex(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("steering_vector: N=11, u=3/11 matches a scalar loop")
{
    const double u = 3.0 / 11.0;
    const CVector v = steering_vector(ula(11), u);
    double norm2 = 0.0;
    for (int k = 0; k < 11; ++k) {
        const double phase = -std::numbers::pi * 3.0 * k / 11.0;
        CHECK(std::abs(v(k).real() - std::cos(phase)) < 1e-14);
        CHECK(std::abs(v(k).imag() - std::sin(phase)) < 1e-14);
        norm2 += std::norm(v(k));
    }
    CHECK(v(0) == Complex(1.0, 0.0));
    CHECK(std::sqrt(norm2) == doctest::Approx(std::sqrt(11.0)).epsilon(1e-14));
}

TEST_CASE("steering_vector: u = 0 is all ones for any geometry")
{
    for (int n : {2, 5, 17})
        for (double d : {0.1, 0.25, 0.5}) {
            UlaConfig cfg{n, d, 0.3, false};
            const CVector v = steering_vector(cfg, 0.0);
            CHECK((v.array() == Complex(1.0, 0.0)).all());
        }
}

TEST_CASE("steering_vector: rejects out-of-range directions")
{
    CHECK_THROWS_AS(steering_vector(ula(4), 1.0001), DomainError);
    CHECK_THROWS_AS(steering_vector(ula(4), std::nan("")), DomainError);
}

TEST_CASE("UlaConfig validation")
{
    CHECK_THROWS_AS((UlaConfig{1, 0.5, 0.0, false}.validate()), DomainError);
    CHECK_THROWS_AS((UlaConfig{4, 0.0, 0.0, false}.validate()), DomainError);
    CHECK_THROWS_AS((UlaConfig{4, 0.75, 0.0, false}.validate()), DomainError);
    CHECK_NOTHROW((UlaConfig{4, 0.75, 0.0, true}.validate()));
    CHECK_THROWS_AS((UlaConfig{4, 0.5, -1.5, false}.validate()), DomainError);
}

TEST_CASE("ensemble_covariance: small cases")
{
    const auto noise_only = ensemble_covariance(ula(4), Scene{{}, 1.0});
    CHECK(noise_only.matrix().isApprox(CMatrix::Identity(4, 4)));
    CHECK(noise_only.kind() == CovarianceKind::Ensemble);

    const auto one = ensemble_covariance(ula(2), Scene{{SourceSpec{0.0, 1.0}}, 1.0});
    CMatrix expected(2, 2);
    expected << 2.0, 1.0, 1.0, 2.0;
    CHECK((one.matrix() - expected).norm() < 1e-15);
}

TEST_CASE("ensemble_covariance: trace identity, exact symmetry, eigenvalue floor")
{
    const auto sigma = ensemble_covariance(ula(11), test::reference_scene());
    CHECK(sigma.trace() == doctest::Approx(11.0 * (1e4 + 1.0)).epsilon(1e-14));
    CHECK((sigma.matrix() - sigma.matrix().adjoint()).norm() == 0.0);
    CHECK(sigma.eigenvalues()(0) >= 1.0 - 1e-10);

    Scene three{{{-0.4, 10.0}, {0.2, 300.0}, {0.9, 5.0}}, 0.5};
    const auto s3 = ensemble_covariance(ula(8), three);
    CHECK((s3.matrix() - s3.matrix().adjoint()).norm() == 0.0);
    CHECK(s3.eigenvalues()(0) >= 0.5 - 1e-10);
}

TEST_CASE("Scene validation")
{
    CHECK_THROWS_AS(ensemble_covariance(ula(4), Scene{{}, 0.0}), DomainError);
    CHECK_THROWS_AS(ensemble_covariance(ula(4), Scene{{SourceSpec{0.0, -1.0}}, 1.0}), DomainError);
    CHECK_THROWS_AS(ensemble_covariance(ula(4), Scene{{SourceSpec{2.0, 1.0}}, 1.0}), DomainError);
}

TEST_CASE("generate_snapshots: shape, determinism, and errors")
{
    const Scene scene = test::reference_scene();
    const auto a = generate_snapshots(ula(11), scene, 12, 99);
    const auto b = generate_snapshots(ula(11), scene, 12, 99);
    const auto c = generate_snapshots(ula(11), scene, 12, 100);
    CHECK(a.n_sensors() == 11);
    CHECK(a.n_snapshots() == 12);
    CHECK(a.seed == 99);
    CHECK((a.data.array() == b.data.array()).all());
    CHECK(!(a.data.array() == c.data.array()).all());
    CHECK_THROWS_AS(generate_snapshots(ula(11), scene, 0, 1), DomainError);
}

TEST_CASE("generate_snapshots: white noise statistics over 1e6 snapshots")
{
    const int n = 4;
    const int l = 1'000'000;
    const auto x = generate_snapshots(ula(n), Scene{{}, 1.0}, l, 2024);

    const CVector m = x.data.rowwise().mean();
    for (int k = 0; k < n; ++k)
        CHECK(std::abs(m(k)) < 5e-3);

    const CMatrix s = x.data * x.data.adjoint() / static_cast<double>(l);
    CHECK((s - CMatrix::Identity(n, n)).norm() / std::sqrt(static_cast<double>(n)) < 0.01);
}

TEST_CASE("generate_snapshots: converges to the ensemble covariance")
{
    Scene scene{{{0.3, 4.0}, {-0.55, 1.5}}, 1.0};
    const auto cfg = ula(6);
    const CMatrix sigma = ensemble_covariance(cfg, scene).matrix();
    for (int l : {1000, 10000}) {
        const auto x = generate_snapshots(cfg, scene, l, 7u + static_cast<unsigned>(l));
        const CMatrix s = x.data * x.data.adjoint() / static_cast<double>(l);
        CHECK((s - sigma).norm() / sigma.norm() < 3.0 / std::sqrt(static_cast<double>(l)));
    }
}

TEST_CASE("generate_snapshots: noise is circular")
{
    for (int l : {1000, 10000}) {
        const auto x = generate_snapshots(ula(5), Scene{{}, 1.0}, l, 31u + static_cast<unsigned>(l));
        const CMatrix pseudo = x.data * x.data.transpose() / static_cast<double>(l);
        CHECK(pseudo.cwiseAbs().maxCoeff() < 5.0 / std::sqrt(static_cast<double>(l)));
    }
}
