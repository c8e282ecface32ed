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

// Outage upper bound for the phase-aligned relay beamformer.
//
// Replacing the coherent gain by its Cauchy-Schwarz companion w >= 1 gives
//   SNR_1 >= x1 x2 rho / (N (2 x1 + x2 + N/rho)),  x1 = |h|^2, x2 = |g|^2,
// with x1, x2 independent Gamma(N, 1). The bound is Pr{that expression < gamma_th}
// and is evaluated four ways: the literal closed form term by term, a
// one-dimensional quadrature over x2 (the reference), direct gamma-variate
// simulation, and the high-SNR power law.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "twr/curve.hpp"
#include "twr/errors.hpp"
#include "twr/parallel.hpp"
#include "twr/quadrature.hpp"
#include "twr/rng.hpp"
#include "twr/specfun.hpp"

namespace twr {

struct BoundParams {
    int n = 1;
    double gamma_th = 1.0;
    double rho = 1.0;

    void validate() const
    {
        if (n < 1) {
            throw DomainError("antenna count must be >= 1, got " + std::to_string(n));
        }
        if (!(gamma_th > 0.0) || !std::isfinite(gamma_th)) {
            throw DomainError("gamma_th must be positive and finite");
        }
        if (!(rho > 0.0) || !std::isfinite(rho)) {
            throw DomainError("rho must be positive and finite");
        }
    }

    double a() const noexcept { return gamma_th / rho; }
    double b() const noexcept { return n * gamma_th * (1.0 + 2.0 * gamma_th); }
};

enum class BoundMethod { PrintedClosedForm, SemiAnalytic, GammaVariateMC, Asymptotic };

inline std::string_view to_string(BoundMethod m) noexcept
{
    switch (m) {
    case BoundMethod::PrintedClosedForm: return "printed";
    case BoundMethod::SemiAnalytic: return "semi";
    case BoundMethod::GammaVariateMC: return "mc";
    case BoundMethod::Asymptotic: return "asymptotic";
    }
    return "?";
}

struct BoundValue {
    double probability = 0.0; // clamped to [0, 1]
    double raw = 0.0;         // before clamping
    BoundMethod method = BoundMethod::SemiAnalytic;
    double std_error = 0.0;       // Monte-Carlo only
    double numerical_error = 0.0; // semi: quadrature error + tail bound; printed: cancellation floor
};

inline BoundValue make_bound(double raw, BoundMethod method)
{
    BoundValue v;
    v.raw = raw;
    v.probability = std::clamp(raw, 0.0, 1.0);
    v.method = method;
    return v;
}

// Switches for the two suspected typos in the closed form. The defaults
// evaluate it exactly as written.
struct PrintedVariant {
    // Use 1/i! in the triple sum (the standard series of gamma(N, z)) instead
    // of the literal 1/Gamma(i), which zeroes the i = 0 term.
    bool factorial_series = false;
    // Use the complete Gamma(N - j) in the single sum instead of
    // Gamma[N - j, (N - j) b / rho].
    bool complete_single_sum = false;
};

inline BoundValue bound_printed(const BoundParams &p, PrintedVariant variant = {})
{
    p.validate();
    const int n = p.n;
    const double g = p.gamma_th;
    const double rho = p.rho;
    const double a = p.a();
    const double b = p.b();
    const double gn = gamma_int(n);

    const double first = regularized_lower_gamma(n, 2.0 * n * g / rho);

    double single = 0.0;
    for (int j = 0; j < n; ++j) {
        const double gamma_term = variant.complete_single_sum
                                      ? gamma_int(n - j)
                                      : upper_incomplete_gamma(n - j, (n - j) * b / rho);
        single += static_cast<double>(binomial(n - 1, j)) * std::pow(2.0 * n * g, j) / gn * gamma_term *
                  std::exp(-2.0 * n * a) / std::pow(rho, j);
    }

    const double bessel_arg = 2.0 * std::sqrt(b) / rho;
    const double decay = std::exp(-(2.0 * n + 1.0) * g / rho);
    double triple = 0.0;
    for (int i = 0; i < n; ++i) {
        const double inv_gamma_i = variant.factorial_series ? 1.0 / gamma_int(i + 1) : reciprocal_gamma_int(i);
        if (inv_gamma_i == 0.0) {
            continue;
        }
        for (int k = 0; k <= i; ++k) {
            for (int l = 0; l < n; ++l) {
                triple += 2.0 * static_cast<double>(binomial(i, k)) * static_cast<double>(binomial(n - 1, l)) *
                          std::pow(2.0 * n, l) * std::pow(b, 0.5 * (n + k - l)) * std::pow(g, i + l - k) / gn *
                          inv_gamma_i * bessel_k_int(k + l - n, bessel_arg) * decay /
                          std::pow(rho, n + i);
            }
        }
    }
    // The three pieces nearly cancel at high SNR; record the rounding floor.
    BoundValue v = make_bound(first + single - triple, BoundMethod::PrintedClosedForm);
    v.numerical_error = 64.0 * std::numeric_limits<double>::epsilon() * (first + std::abs(single) + std::abs(triple));
    return v;
}

inline QuadratureSpec semi_analytic_default_spec()
{
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-11;
    spec.max_subdivisions = 4000;
    return spec;
}

// Pr{x1 x2 rho / (N (2 x1 + x2 + N/rho)) < gamma_th} = K1 + K2 with
//   K1 = Pr{x2 < 2Na} = P(N, 2Na),
//   K2 = int_{2Na}^inf P(N, z(x2)) f(x2) dx2,
//   z(x2) = N (gamma_th x2 + N a) / (rho x2 - 2 N gamma_th),
// f the Gamma(N, 1) density. z falls monotonically from +inf at x2 = 2Na;
// where z exceeds a cutoff P(N, z) is 1 to below 1e-17 and that stretch is
// integrated exactly. The rest runs in u = ln(x2 - 2Na), which spreads the
// 1/rho-wide boundary layer and the O(1) bulk over comparable lengths.
inline BoundValue bound_semi_analytic(const BoundParams &p, const QuadratureSpec &spec = semi_analytic_default_spec())
{
    p.validate();
    spec.validate();
    const int n = p.n;
    const double g = p.gamma_th;
    const double rho = p.rho;
    const double a = p.a();
    const double x0 = 2.0 * n * a;

    const double k1 = regularized_lower_gamma(n, x0);
    const double z_cut = 2.0 * n + 60.0;
    const double cut_error = regularized_upper_gamma(n, z_cut);

    if (z_cut * rho <= n * g) {
        // z > z_cut everywhere: the whole of K2 sits in the saturated regime.
        BoundValue v = make_bound(1.0, BoundMethod::SemiAnalytic);
        v.numerical_error = cut_error;
        return v;
    }

    auto z_of = [&](double x2) { return n * (g * x2 + n * a) / (rho * x2 - 2.0 * n * g); };
    const double x_cut = std::max((n * n * a + 2.0 * n * g * z_cut) / (z_cut * rho - n * g),
                                  std::nextafter(x0, std::numeric_limits<double>::infinity()));
    const double near = regularized_lower_gamma(n, x_cut) - k1;

    const double log_gamma_n = std::lgamma(static_cast<double>(n));
    auto integrand = [&](double u) {
        const double offset = std::exp(u);
        const double x2 = x0 + offset;
        const double density = std::exp((n - 1) * std::log(x2) - x2 - log_gamma_n);
        return regularized_lower_gamma(n, z_of(x2)) * density * offset;
    };

    double upper = std::max(2.0 * x_cut, n + 50.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        const QuadResult far = integrate_adaptive(integrand, std::log(x_cut - x0), std::log(upper - x0), spec);
        const double tail = regularized_upper_gamma(n, upper) * regularized_lower_gamma(n, z_of(upper));
        const double total = k1 + near + far.value;
        if (tail <= 1e-3 * spec.rel_tol * total || tail <= spec.abs_tol) {
            BoundValue v = make_bound(total, BoundMethod::SemiAnalytic);
            v.numerical_error = far.error + tail + cut_error * near;
            return v;
        }
        upper *= 2.0;
    }
    throw ConvergenceError("semi-analytic bound: x2 tail did not fall below tolerance", k1 + near, 1.0);
}

namespace detail {

// Gamma(N, 1) variate as -ln of a product of N uniforms, folding the product
// into the log every 16 factors so it cannot underflow.
inline double gamma_variate(int shape, RngStream &stream) noexcept
{
    double log_sum = 0.0;
    double product = 1.0;
    for (int i = 0; i < shape; ++i) {
        product *= stream.uniform();
        if ((i & 15) == 15) {
            log_sum += std::log(product);
            product = 1.0;
        }
    }
    return -(log_sum + std::log(product));
}

} // namespace detail

// Direct simulation of the bounded event with independent Gamma(N, 1) draws;
// trial i uses substream(seed, i).
inline BoundValue bound_mc(const BoundParams &p, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0)
{
    p.validate();
    if (trials < 1) {
        throw DomainError("bound_mc needs at least one trial");
    }
    const int n = p.n;
    const double rho = p.rho;
    const double threshold = p.gamma_th;
    const std::uint64_t hits = block_reduce<std::uint64_t>(
        trials, threads, 0,
        [&](std::uint64_t begin, std::uint64_t end) {
            std::uint64_t count = 0;
            for (std::uint64_t t = begin; t < end; ++t) {
                RngStream stream = substream(seed, t);
                const double x1 = detail::gamma_variate(n, stream);
                const double x2 = detail::gamma_variate(n, stream);
                const double snr = x1 * x2 * rho / (n * (2.0 * x1 + x2 + n / rho));
                count += snr < threshold ? 1 : 0;
            }
            return count;
        },
        [](std::uint64_t &acc, std::uint64_t part) { acc += part; });
    const double estimate = static_cast<double>(hits) / static_cast<double>(trials);
    BoundValue v = make_bound(estimate, BoundMethod::GammaVariateMC);
    v.std_error = binomial_stderr(estimate, trials);
    return v;
}

// [(2N gamma_th)^N / (N Gamma(N)) + gamma_th^N / (N Gamma(N)^2)] rho^-N.
// rho^N is formed by repeated multiplication so that scaling rho by a power
// of two scales the result exactly.
inline BoundValue asymptotic_bound(const BoundParams &p)
{
    p.validate();
    const int n = p.n;
    const double gn = gamma_int(n);
    double two_n_gamma_pow = 1.0;
    double gamma_pow = 1.0;
    double rho_pow = 1.0;
    for (int i = 0; i < n; ++i) {
        two_n_gamma_pow *= 2.0 * n * p.gamma_th;
        gamma_pow *= p.gamma_th;
        rho_pow *= p.rho;
    }
    const double coefficient = two_n_gamma_pow / (n * gn) + gamma_pow / (n * gn * gn);
    return make_bound(coefficient / rho_pow, BoundMethod::Asymptotic);
}

// Least-squares slope of log10(outage) against log10(rho) over the points with
// rho_db in [lo_db, hi_db] and positive outage. When every usable point has a
// standard error the fit is weighted by the delta-method variance of
// log10(p), (se / (p ln 10))^2; otherwise it is unweighted.
inline double diversity_slope(const OutageCurve &curve, double lo_db, double hi_db)
{
    std::vector<double> xs, ys, ws;
    bool weighted = true;
    for (const auto &pt : curve.points) {
        if (pt.rho_db < lo_db || pt.rho_db > hi_db || !(pt.outage > 0.0)) {
            continue;
        }
        xs.push_back(pt.rho_db / 10.0);
        ys.push_back(std::log10(pt.outage));
        if (pt.std_error > 0.0) {
            const double sd = pt.std_error / (pt.outage * std::log(10.0));
            ws.push_back(1.0 / (sd * sd));
        } else {
            weighted = false;
        }
    }
    if (xs.size() < 2) {
        throw InsufficientData("diversity slope needs >= 2 positive points in [" + std::to_string(lo_db) + ", " +
                               std::to_string(hi_db) + "] dB, found " + std::to_string(xs.size()));
    }
    if (!weighted) {
        ws.assign(xs.size(), 1.0);
    }
    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += ws[i] * (xs[i] - mx) * (xs[i] - mx);
        sxy += ws[i] * (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw InsufficientData("diversity slope needs points at >= 2 distinct SNRs");
    }
    return sxy / sxx;
}

// One row per (N, rho) comparing the closed form, literal and with
// each typo switch applied, against the quadrature reference.
struct DiscrepancyRow {
    int n = 0;
    double rho_db = 0.0;
    double printed = 0.0;            // raw, literal form
    double printed_factorial = 0.0;  // 1/i! series
    double printed_both = 0.0;       // 1/i! series and complete Gamma(N - j)
    double semi = 0.0;
    double asymptotic = 0.0;
    double ratio_printed_semi = 0.0;
};

inline DiscrepancyRow discrepancy_row(int n, double gamma_th, double rho_db)
{
    const BoundParams p{n, gamma_th, db_to_linear(rho_db)};
    DiscrepancyRow row;
    row.n = n;
    row.rho_db = rho_db;
    row.printed = bound_printed(p).raw;
    row.printed_factorial = bound_printed(p, {true, false}).raw;
    row.printed_both = bound_printed(p, {true, true}).raw;
    row.semi = bound_semi_analytic(p).raw;
    row.asymptotic = asymptotic_bound(p).raw;
    row.ratio_printed_semi = row.printed / row.semi;
    return row;
}

} // namespace twr
