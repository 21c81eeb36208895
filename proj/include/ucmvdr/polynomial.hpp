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
#include <vector>

#include "ucmvdr/array_model.hpp"

namespace ucmvdr {

struct WeightVector;

/// Array polynomial in z^-1,
///
///     P(z) = sum_n p_n z^-n = scale * prod_k (1 - zero_k z^-1),
///
/// with p_n = conj(w_n) for a weight vector w. Zeros are held in canonical
/// order (see canonical_order).
class ArrayPolynomial {
public:
    ArrayPolynomial(Complex scale, ZeroSet zeros);

    Complex scale() const { return scale_; }
    const ZeroSet &zeros() const { return zeros_; }
    int degree() const { return static_cast<int>(zeros_.size()); }

    /// Coefficients p_0 .. p_degree of z^-n.
    CVector coefficients() const;

    /// P(z) evaluated at an arbitrary nonzero z.
    Complex operator()(Complex z) const;

private:
    Complex scale_;
    ZeroSet zeros_;
};

/// Angle in (-pi, pi].
double principal_angle(Complex z);

/// Sorts ascending by angle in (-pi, pi], ties broken by radius.
void canonical_order(ZeroSet &zeros);

/// Zeros of sum_n c_n z^-n, i.e. roots of c_0 z^m + c_1 z^(m-1) + ... + c_m,
/// from the eigenvalues of the balanced companion matrix. Returned in
/// canonical order. Throws NumericalError if |c_0| < 1e-12 * ||c|| or the
/// eigensolver fails.
ZeroSet find_zeros(const CVector &coefficients);

/// Expands prod_k (1 - zero_k z^-1) by sequential convolution. The leading
/// coefficient is exactly 1.
CVector zeros_to_coefficients(const ZeroSet &zeros);

/// Polynomial with coefficients conj(w_n).
ArrayPolynomial weights_to_polynomial(const WeightVector &w);

/// Radial projection onto the unit circle with main-lobe guard: a zero
/// r e^{j omega} with |omega| > 2 pi / N becomes e^{j omega}; one with
/// |omega| <= 2 pi / N becomes e^{j sgn(omega) 2 pi / N}, sgn(0) = +1.
/// Zeros already on the unit circle outside the main lobe (to within a few
/// ulps) are returned unchanged, which makes the projection idempotent.
/// Throws DomainError naming the index of a zero with |z| <= 1e-12.
ZeroSet project_zeros_to_unit_circle(const ZeroSet &zeros, int n_sensors);

} // namespace ucmvdr
