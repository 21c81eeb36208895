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

#include <stdexcept>
#include <string>

namespace ucmvdr {

// Argument outside the mathematical domain of an operation (bad direction,
// negative loading, empty scene, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Numerical failure: singular covariance, eigensolver non-convergence,
// degenerate polynomial.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Diagonal loading calibration target outside the reachable WNG range.
class CalibrationError : public std::runtime_error {
public:
    CalibrationError(const std::string &what, double min_wng, double max_wng)
        : std::runtime_error(what), min_wng_(min_wng), max_wng_(max_wng) {}

    double min_reachable() const noexcept { return min_wng_; }
    double max_reachable() const noexcept { return max_wng_; }

private:
    double min_wng_;
    double max_wng_;
};

// Malformed or invalid experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ucmvdr
