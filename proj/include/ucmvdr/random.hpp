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

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace ucmvdr {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Per-trial seed derivation:
///
///     trial_seed = splitmix64(base_seed ^ splitmix64(trial_index))
///
/// The result depends only on (base_seed, trial_index), so a run is
/// reproducible regardless of how trials are scheduled across threads.
constexpr std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t trial_index) noexcept
{
    return splitmix64(base_seed ^ splitmix64(trial_index));
}

/// Salt applied to the base seed for calibration pilot trials, keeping the
/// pilot streams disjoint from evaluation streams.
inline constexpr std::uint64_t kPilotSalt = 0x50494C4F54530000ULL; // "PILOTS\0\0"

constexpr std::uint64_t pilot_seed(std::uint64_t base_seed, std::uint64_t pilot_index) noexcept
{
    return mix_seed(base_seed ^ kPilotSalt, pilot_index);
}

/// Engine used for one trial's stream.
using Engine = std::mt19937_64;

/// Circular complex Gaussian CN(0, variance): real and imaginary parts are
/// i.i.d. N(0, variance / 2).
class ComplexNormal {
public:
    explicit ComplexNormal(double variance = 1.0) : normal_(0.0, std::sqrt(variance / 2.0)) {}

    std::complex<double> operator()(Engine &engine)
    {
        const double re = normal_(engine);
        const double im = normal_(engine);
        return {re, im};
    }

private:
    std::normal_distribution<double> normal_;
};

} // namespace ucmvdr
