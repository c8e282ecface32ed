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
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "twr/channel.hpp"
#include "twr/errors.hpp"

namespace twr {

enum class Scheme { Proposed, DirectAF, AntennaSelection };

// Relay transform applied to the superposed received signal before
// rebroadcast. `selected` is the 0-based antenna for AntennaSelection and -1
// otherwise.
struct Beamformer {
    ComplexMatrix q;
    Scheme scheme = Scheme::DirectAF;
    Eigen::Index selected = -1;

    Eigen::Index size() const noexcept { return q.rows(); }
};

// End-to-end SNRs (linear) at S1 and S2 after self-interference removal.
struct SnrPair {
    double snr1 = 0.0;
    double snr2 = 0.0;
};

// The rho-independent quantities the SNR formulas need. Computing them once
// lets a caller sweep rho without touching matrices again.
struct SnrTerms {
    double signal1 = 0.0;   // |h^T Q g|^2
    double signal2 = 0.0;   // |g^T Q h|^2
    double relay_h = 0.0;   // |Q h|^2
    double relay_g = 0.0;   // |Q g|^2
    double frobenius = 0.0; // ||Q||_F^2, the relay noise gain
};

namespace detail {

inline double phase_or_zero(const Complex &z) noexcept
{
    return (z.real() == 0.0 && z.imag() == 0.0) ? 0.0 : std::arg(z);
}

inline void check_rho(double rho)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw DomainError("average SNR rho must be positive and finite");
    }
}

} // namespace detail

// Diagonal phase-alignment matrix: q_mm = exp(-j(arg h_m + arg g_m)), so
// that every branch of h^T Q g and g^T Q h adds with zero phase.
inline Beamformer build_proposed(const ChannelPair &ch)
{
    ch.validate();
    const Eigen::Index n = ch.size();
    Beamformer bf{ComplexMatrix::Zero(n, n), Scheme::Proposed, -1};
    for (Eigen::Index m = 0; m < n; ++m) {
        bf.q(m, m) = std::polar(1.0, -(detail::phase_or_zero(ch.h[m]) + detail::phase_or_zero(ch.g[m])));
    }
    return bf;
}

inline Beamformer build_direct_af(Eigen::Index n)
{
    if (n < 1) {
        throw InvalidDimension("antenna count must be >= 1, got " + std::to_string(n));
    }
    return Beamformer{ComplexMatrix::Identity(n, n), Scheme::DirectAF, -1};
}

inline Beamformer selection_matrix(Eigen::Index n, Eigen::Index k)
{
    if (n < 1 || k < 0 || k >= n) {
        throw InvalidDimension("antenna " + std::to_string(k) + " out of range for " + std::to_string(n) +
                               " antennas");
    }
    Beamformer bf{ComplexMatrix::Zero(n, n), Scheme::AntennaSelection, k};
    bf.q(k, k) = Complex(1.0, 0.0);
    return bf;
}

inline SnrTerms snr_terms(const ChannelPair &ch, const Beamformer &bf)
{
    ch.validate();
    if (bf.q.rows() != ch.size() || bf.q.cols() != ch.size()) {
        throw InvalidDimension("beamformer is " + std::to_string(bf.q.rows()) + "x" + std::to_string(bf.q.cols()) +
                               " but channels have " + std::to_string(ch.size()) + " entries");
    }
    const ComplexVector qh = bf.q * ch.h;
    const ComplexVector qg = bf.q * ch.g;
    SnrTerms t;
    t.signal1 = std::norm((ch.h.transpose() * qg).value());
    t.signal2 = std::norm((ch.g.transpose() * qh).value());
    t.relay_h = qh.squaredNorm();
    t.relay_g = qg.squaredNorm();
    t.frobenius = bf.q.squaredNorm();
    return t;
}

// SNR_1 = |h^T Q g|^2 rho / (2|Qh|^2 + |Qg|^2 + ||Q||^2/rho), SNR_2 with the
// roles of h and g exchanged. The relay power normalization is folded in
// with P_R = P_1 = P_2.
inline SnrPair evaluate_snr(const SnrTerms &t, double rho)
{
    detail::check_rho(rho);
    const double noise = t.frobenius / rho;
    SnrPair s;
    s.snr1 = t.signal1 * rho / (2.0 * t.relay_h + t.relay_g + noise);
    s.snr2 = t.signal2 * rho / (2.0 * t.relay_g + t.relay_h + noise);
    return s;
}

inline SnrPair snr_pair_general(const ChannelPair &ch, const Beamformer &bf, double rho)
{
    detail::check_rho(rho);
    return evaluate_snr(snr_terms(ch, bf), rho);
}

// Closed form of snr_pair_general(ch, build_proposed(ch), rho).
inline SnrPair snr_pair_proposed(const ChannelPair &ch, double rho)
{
    ch.validate();
    detail::check_rho(rho);
    double coherent = 0.0;
    for (Eigen::Index m = 0; m < ch.size(); ++m) {
        coherent += std::abs(ch.h[m]) * std::abs(ch.g[m]);
    }
    const double x1 = ch.h.squaredNorm();
    const double x2 = ch.g.squaredNorm();
    const double noise = static_cast<double>(ch.size()) / rho;
    const double signal = coherent * coherent * rho;
    return {signal / (2.0 * x1 + x2 + noise), signal / (2.0 * x2 + x1 + noise)};
}

// Max-min rule over per-antenna SnrTerms; ties go to the smaller index.
inline Eigen::Index select_antenna(std::span<const SnrTerms> per_antenna, double rho)
{
    Eigen::Index best = 0;
    double best_value = -1.0;
    for (std::size_t k = 0; k < per_antenna.size(); ++k) {
        const SnrPair s = evaluate_snr(per_antenna[k], rho);
        const double worst = std::min(s.snr1, s.snr2);
        if (worst > best_value) {
            best_value = worst;
            best = static_cast<Eigen::Index>(k);
        }
    }
    return best;
}

inline std::vector<SnrTerms> per_antenna_terms(const ChannelPair &ch)
{
    ch.validate();
    std::vector<SnrTerms> terms;
    terms.reserve(static_cast<std::size_t>(ch.size()));
    for (Eigen::Index k = 0; k < ch.size(); ++k) {
        terms.push_back(snr_terms(ch, selection_matrix(ch.size(), k)));
    }
    return terms;
}

// Single-antenna relaying on the antenna that maximizes min(SNR_1, SNR_2).
inline Beamformer build_antenna_selection(const ChannelPair &ch, double rho)
{
    detail::check_rho(rho);
    const auto terms = per_antenna_terms(ch);
    return selection_matrix(ch.size(), select_antenna(terms, rho));
}

// w = (sum |h_m||g_m|)^2 / ((1/N)|h|^2 |g|^2). Cauchy-Schwarz gives
// 0 <= w <= N; the result is clamped to N so rounding never breaks the cap,
// and N = 1 returns exactly 1.
inline double w_statistic(const ChannelPair &ch)
{
    ch.validate();
    double coherent = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    for (Eigen::Index m = 0; m < ch.size(); ++m) {
        const double a = std::abs(ch.h[m]);
        const double b = std::abs(ch.g[m]);
        coherent += a * b;
        x1 += a * a;
        x2 += b * b;
    }
    if (!(x1 > 0.0) || !(x2 > 0.0)) {
        throw DegenerateInput("w statistic is undefined for a zero-norm channel");
    }
    const auto n = static_cast<double>(ch.size());
    if (ch.size() == 1) {
        return 1.0;
    }
    return std::min(coherent * coherent / (x1 * x2 / n), n);
}

} // namespace twr
