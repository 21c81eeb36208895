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

#include "ucmvdr/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "ucmvdr/beamformers.hpp"
#include "ucmvdr/errors.hpp"

namespace ucmvdr {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch balancing with power-of-two scale factors, so the
// similarity transform is exact in floating point.
void balance(CMatrix &a)
{
    const int n = static_cast<int>(a.rows());
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0;
            double r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

} // namespace

ArrayPolynomial::ArrayPolynomial(Complex scale, ZeroSet zeros) : scale_(scale), zeros_(std::move(zeros))
{
    canonical_order(zeros_);
}

CVector ArrayPolynomial::coefficients() const
{
    return scale_ * zeros_to_coefficients(zeros_);
}

Complex ArrayPolynomial::operator()(Complex z) const
{
    const Complex zinv = 1.0 / z;
    Complex value = scale_;
    for (const auto &zero : zeros_)
        value *= 1.0 - zero * zinv;
    return value;
}

double principal_angle(Complex z)
{
    const double a = std::arg(z);
    return a == -std::numbers::pi ? std::numbers::pi : a;
}

void canonical_order(ZeroSet &zeros)
{
    std::stable_sort(zeros.begin(), zeros.end(), [](const Complex &a, const Complex &b) {
        const double aa = principal_angle(a);
        const double ab = principal_angle(b);
        if (aa != ab)
            return aa < ab;
        return std::abs(a) < std::abs(b);
    });
}

ZeroSet find_zeros(const CVector &coefficients)
{
    const int len = static_cast<int>(coefficients.size());
    if (len == 0)
        throw DomainError("polynomial has no coefficients");
    if (!coefficients.allFinite())
        throw NumericalError("polynomial coefficients are not finite");
    const double norm = coefficients.norm();
    if (!(std::abs(coefficients(0)) >= 1e-12 * norm) || norm == 0.0)
        throw NumericalError("degenerate polynomial: leading coefficient magnitude " +
                             std::to_string(std::abs(coefficients(0))) + " is below 1e-12 * ||c||");
    const int degree = len - 1;
    if (degree == 0)
        return {};

    CMatrix companion = CMatrix::Zero(degree, degree);
    for (int k = 0; k < degree; ++k)
        companion(0, k) = -coefficients(k + 1) / coefficients(0);
    for (int k = 1; k < degree; ++k)
        companion(k, k - 1) = 1.0;
    balance(companion);

    Eigen::ComplexEigenSolver<CMatrix> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("companion matrix eigensolver did not converge (degree " +
                             std::to_string(degree) + ")");
    ZeroSet zeros(solver.eigenvalues().data(), solver.eigenvalues().data() + degree);
    canonical_order(zeros);
    return zeros;
}

CVector zeros_to_coefficients(const ZeroSet &zeros)
{
    const int m = static_cast<int>(zeros.size());
    CVector c = CVector::Zero(m + 1);
    c(0) = 1.0;
    // After k factors, c(0..k) holds the expansion; update from the top so each
    // step reads the previous coefficients.
    for (int k = 0; k < m; ++k)
        for (int i = k + 1; i >= 1; --i)
            c(i) -= zeros[k] * c(i - 1);
    return c;
}

ArrayPolynomial weights_to_polynomial(const WeightVector &w)
{
    if (w.size() < 2)
        throw DomainError("weight vector must have at least 2 elements");
    const CVector coeffs = w.weights.conjugate();
    ZeroSet zeros = find_zeros(coeffs);
    return ArrayPolynomial(coeffs(0), std::move(zeros));
}

ZeroSet project_zeros_to_unit_circle(const ZeroSet &zeros, int n_sensors)
{
    if (zeros.empty())
        throw DomainError("no zeros to project");
    if (n_sensors < 2)
        throw DomainError("n_sensors must be at least 2");
    const double guard = 2.0 * std::numbers::pi / n_sensors;

    ZeroSet out;
    out.reserve(zeros.size());
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const Complex z = zeros[i];
        const double radius = std::abs(z);
        if (!(radius > 1e-12))
            throw DomainError("zero " + std::to_string(i) + " lies at the origin; its angle is undefined");
        const double omega = principal_angle(z);
        const bool on_circle = std::abs(radius - 1.0) <= 8.0 * kEps;
        if (on_circle && std::abs(omega) >= guard - 8.0 * kEps * guard && std::abs(omega) > 0.0) {
            // Already a projected zero (including the guard points themselves).
            out.push_back(z);
        } else if (std::abs(omega) > guard) {
            out.push_back(std::polar(1.0, omega));
        } else {
            out.push_back(std::polar(1.0, omega < 0.0 ? -guard : guard));
        }
    }
    return out;
}

} // namespace ucmvdr
