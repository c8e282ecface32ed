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
#include <cstdint>
#include <vector>

namespace twr {

inline double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) noexcept { return 10.0 * std::log10(linear); }

// Linear SNR threshold for a target rate over the two-slot exchange,
// R = 1/2 log2(1 + SNR).
inline double gamma_from_rate(double rate_bits) noexcept { return std::exp2(2.0 * rate_bits) - 1.0; }

struct OutagePoint {
    double rho_db = 0.0;
    double outage = 0.0;
    double std_error = 0.0; // binomial sqrt(p(1-p)/trials); 0 for analytic curves
    std::uint64_t trials = 0;
};

struct OutageCurve {
    std::vector<OutagePoint> points;
};

inline double binomial_stderr(double p, std::uint64_t trials) noexcept
{
    return trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

} // namespace twr
