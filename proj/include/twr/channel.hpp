// SPDX-License-Identifier: Apache-2.0
//
// twr: two-way amplify-and-forward relay beamforming toolkit
// Copyright (C) 2026 The twr Authors
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
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "twr/errors.hpp"
#include "twr/rng.hpp"

namespace twr {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Source-to-relay fading vectors: h for S1 -> R, g for S2 -> R. Links are
// reciprocal, so the same vectors describe the broadcast phase.
struct ChannelPair {
    ComplexVector h;
    ComplexVector g;

    Eigen::Index size() const noexcept { return h.size(); }

    // Throws InvalidDimension on empty or mismatched vectors and
    // DomainError on non-finite entries.
    void validate() const
    {
        if (h.size() == 0 || h.size() != g.size()) {
            throw InvalidDimension("channel pair needs two vectors of equal length >= 1, got " +
                                   std::to_string(h.size()) + " and " + std::to_string(g.size()));
        }
        if (!h.allFinite() || !g.allFinite()) {
            throw DomainError("channel pair has non-finite entries");
        }
    }
};

// Circularly-symmetric complex Gaussian with unit total variance, by the
// exact Box-Muller transform: the modulus sqrt(-ln u1) is Rayleigh with
// E|z|^2 = 1 and the phase is uniform.
inline Complex complex_gaussian(RngStream &stream) noexcept
{
    const double u1 = stream.uniform();
    const double u2 = stream.uniform();
    const double r = std::sqrt(-std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

// Draws h (all n entries) then g from `stream`.
inline ChannelPair sample_channel_pair(Eigen::Index n, RngStream &stream)
{
    if (n < 1) {
        throw InvalidDimension("antenna count must be >= 1, got " + std::to_string(n));
    }
    ChannelPair ch{ComplexVector(n), ComplexVector(n)};
    for (Eigen::Index m = 0; m < n; ++m) {
        ch.h[m] = complex_gaussian(stream);
    }
    for (Eigen::Index m = 0; m < n; ++m) {
        ch.g[m] = complex_gaussian(stream);
    }
    return ch;
}

} // namespace twr
