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

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "twr/errors.hpp"

namespace twr {

struct QuadratureSpec {
    double abs_tol = 1e-300;
    double rel_tol = 1e-12;
    int max_subdivisions = 4000;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1) {
            throw DomainError("quadrature tolerances must be > 0 and subdivisions >= 1");
        }
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated error of the finite part
    double tail = 0.0;  // bound on the truncated tail, 0 for finite ranges
    bool tail_is_bound = true; // false when the tail is an extrapolated estimate
    int intervals = 0;
};

// Upper bound on |integral of f over [T, inf)| as a function of T.
using TailBound = std::function<double(double)>;

namespace detail {

// 15-point Gauss-Kronrod nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights for the odd-indexed Kronrod nodes.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Panel &other) const noexcept { return error < other.error; }
};

template <class F>
Panel gauss_kronrod(F &f, double lo, double hi)
{
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

template <class F>
QuadResult adaptive_finite(F &f, double lo, double hi, const QuadratureSpec &spec)
{
    std::priority_queue<Panel> heap;
    heap.push(gauss_kronrod(f, lo, hi));
    double total = heap.top().value;
    double error = heap.top().error;
    int intervals = 1;
    auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

    while (error > tolerance()) {
        if (intervals >= spec.max_subdivisions) {
            throw ConvergenceError("adaptive quadrature did not converge", total, error);
        }
        const Panel worst = heap.top();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw ConvergenceError("adaptive quadrature hit floating-point resolution", total, error);
        }
        heap.pop();
        const Panel left = gauss_kronrod(f, worst.lo, mid);
        const Panel right = gauss_kronrod(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }

    // Re-sum from scratch in a fixed order to shed incremental drift.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel &a, const Panel &b) { return a.lo < b.lo; });
    QuadResult r;
    r.intervals = intervals;
    for (const auto &p : panels) {
        r.value += p.value;
        r.error += p.error;
    }
    return r;
}

} // namespace detail

// Adaptive Gauss-Kronrod integration of f over [lo, hi]. `hi` may be
// +infinity: the range is then truncated at some T and grown until the tail
// falls below a tenth of the tolerance. With `tail_bound` the recorded tail
// is a rigorous bound; without it the tail is extrapolated from the decay of
// successive doubling panels, which assumes f decays at least exponentially.
template <class F>
QuadResult integrate_adaptive(F &&f, double lo, double hi, const QuadratureSpec &spec = {},
                              const TailBound &tail_bound = {})
{
    spec.validate();
    if (std::isnan(lo) || std::isnan(hi) || !std::isfinite(lo) || hi < lo) {
        throw DomainError("integration range must satisfy finite lo <= hi");
    }
    if (hi == lo) {
        return {};
    }
    if (std::isfinite(hi)) {
        return detail::adaptive_finite(f, lo, hi, spec);
    }

    QuadResult acc;
    double width = std::max(1.0, std::abs(lo));
    double start = lo;
    double previous_panel = std::numeric_limits<double>::infinity();
    for (int grow = 0; grow < 64; ++grow) {
        const double end = start + width;
        const QuadResult panel = detail::adaptive_finite(f, start, end, spec);
        acc.value += panel.value;
        acc.error += panel.error;
        acc.intervals += panel.intervals;
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(acc.value));
        if (tail_bound) {
            const double tail = tail_bound(end);
            if (tail <= 0.1 * tol) {
                acc.tail = tail;
                acc.tail_is_bound = true;
                return acc;
            }
        } else {
            const double magnitude = std::abs(panel.value);
            const double ratio = magnitude / previous_panel;
            if (grow > 0 && ratio < 0.5 && magnitude * ratio / (1.0 - ratio) <= 0.1 * tol) {
                acc.tail = magnitude * ratio / (1.0 - ratio);
                acc.tail_is_bound = false;
                return acc;
            }
            previous_panel = magnitude;
        }
        start = end;
        width *= 2.0;
    }
    throw ConvergenceError("semi-infinite quadrature tail did not decay", acc.value, acc.error);
}

} // namespace twr
