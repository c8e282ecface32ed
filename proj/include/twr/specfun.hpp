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

// Integer-parameter special functions: Gamma, incomplete Gamma, modified
// Bessel K, binomial coefficients. Integer shapes and orders are all the
// outage formulas ever produce.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>

#include "twr/errors.hpp"
#include "twr/quadrature.hpp"

namespace twr {

namespace detail {

// (n-1)! for n = 1..20; all exactly representable as doubles.
inline constexpr std::array<double, 21> kGammaTable = {
    0.0, 1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0, 3628800.0, 39916800.0,
    479001600.0, 6227020800.0, 87178291200.0, 1307674368000.0, 20922789888000.0, 355687428096000.0,
    6402373705728000.0, 121645100408832000.0};

inline void check_shape(int a, double x)
{
    if (a < 1) {
        throw DomainError("incomplete gamma shape must be >= 1, got " + std::to_string(a));
    }
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("incomplete gamma argument must be >= 0");
    }
}

// e^{-x} sum_{i<a} x^i / i!, i.e. the regularized upper incomplete gamma
// Q(a, x). Every term is positive, so there is no cancellation.
inline double upper_regularized_sum(int a, double x)
{
    if (x == 0.0) {
        return 1.0;
    }
    if (x < 600.0) {
        double term = std::exp(-x);
        double sum = term;
        for (int i = 1; i < a; ++i) {
            term *= x / i;
            sum += term;
        }
        return sum;
    }
    // Log domain: e^{-x} alone would underflow.
    const double log_x = std::log(x);
    double sum = 0.0;
    for (int i = 0; i < a; ++i) {
        sum += std::exp(i * log_x - std::lgamma(i + 1.0) - x);
    }
    return sum;
}

// Regularized lower incomplete gamma P(a, x) by the power series
// e^{-x} x^a / Gamma(a) * sum_k x^k / (a (a+1) ... (a+k)); converges for all
// x and keeps full relative accuracy where P is small.
inline double lower_regularized_series(int a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < sum * 1e-17) {
            break;
        }
    }
    return sum * std::exp(a * std::log(x) - x - std::lgamma(static_cast<double>(a)));
}

} // namespace detail

// Gamma(n) = (n-1)!; exact through n = 20, log-domain beyond.
inline double gamma_int(int n)
{
    if (n < 1) {
        throw DomainError("gamma_int needs n >= 1, got " + std::to_string(n));
    }
    if (n <= 20) {
        return detail::kGammaTable[static_cast<std::size_t>(n)];
    }
    return std::exp(std::lgamma(static_cast<double>(n)));
}

// 1/Gamma(n), continued to n = 0 where Gamma has a pole.
inline double reciprocal_gamma_int(int n)
{
    if (n < 0) {
        throw DomainError("reciprocal_gamma_int needs n >= 0, got " + std::to_string(n));
    }
    return n == 0 ? 0.0 : 1.0 / gamma_int(n);
}

// P(a, x) = gamma(a, x) / Gamma(a).
inline double regularized_lower_gamma(int a, double x)
{
    detail::check_shape(a, x);
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return detail::lower_regularized_series(a, x);
    }
    return 1.0 - detail::upper_regularized_sum(a, x);
}

// Q(a, x) = Gamma(a, x) / Gamma(a).
inline double regularized_upper_gamma(int a, double x)
{
    detail::check_shape(a, x);
    if (std::isinf(x)) {
        return 0.0;
    }
    return detail::upper_regularized_sum(a, x);
}

inline double lower_incomplete_gamma(int a, double x)
{
    return gamma_int(a) * regularized_lower_gamma(a, x);
}

inline double upper_incomplete_gamma(int a, double x)
{
    return gamma_int(a) * regularized_upper_gamma(a, x);
}

namespace detail {

// e^x K_nu(x) for nu in {0, 1} from K_nu(x) = int_0^inf e^{-x cosh t} cosh(nu t) dt.
// The tail past T is bounded using cosh t >= e^t / 2 and cosh(nu t) <= e^{nu t}:
//   e^x int_T^inf e^{-x e^t / 2} e^{nu t} dt <= (2/x) e^{x - x e^T / 2} (e^{-T} if nu = 0).
inline double scaled_bessel_k_base(int nu, double x)
{
    auto integrand = [x, nu](double t) {
        const double c = nu == 0 ? 1.0 : std::cosh(t);
        return std::exp(-x * (std::cosh(t) - 1.0)) * c;
    };
    auto tail = [x, nu](double t) {
        const double log_bound = std::log(2.0 / x) + x - 0.5 * x * std::exp(t) - (nu == 0 ? t : 0.0);
        return std::exp(log_bound);
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-14;
    spec.max_subdivisions = 4000;
    return integrate_adaptive(integrand, 0.0, std::numeric_limits<double>::infinity(), spec, tail).value;
}

} // namespace detail

// K_order(x) for integer order (K_{-nu} = K_nu) via K_0, K_1 and the forward
// recurrence K_{nu+1} = K_{nu-1} + (2 nu / x) K_nu, which is stable for K.
inline double bessel_k_int(int order, double x)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("bessel_k_int needs a positive finite argument");
    }
    const int nu = std::abs(order);
    double previous = detail::scaled_bessel_k_base(0, x);
    if (nu == 0) {
        return previous * std::exp(-x);
    }
    double current = detail::scaled_bessel_k_base(1, x);
    for (int k = 1; k < nu; ++k) {
        const double next = previous + (2.0 * k / x) * current;
        previous = current;
        current = next;
    }
    return current * std::exp(-x);
}

// Exact binomial coefficient for 0 <= k <= n <= 64.
inline std::uint64_t binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n || n > 64) {
        throw DomainError("binomial needs 0 <= k <= n <= 64, got (" + std::to_string(n) + ", " + std::to_string(k) +
                          ")");
    }
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(result);
}

} // namespace twr
