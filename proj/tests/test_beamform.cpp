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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "twr/beamform.hpp"
#include "twr/channel.hpp"

namespace {

using twr::ChannelPair;
using twr::Complex;
using twr::ComplexVector;

ChannelPair real_pair(std::initializer_list<double> h, std::initializer_list<double> g)
{
    ChannelPair ch{ComplexVector(static_cast<Eigen::Index>(h.size())),
                   ComplexVector(static_cast<Eigen::Index>(g.size()))};
    Eigen::Index i = 0;
    for (double v : h) ch.h[i++] = v;
    i = 0;
    for (double v : g) ch.g[i++] = v;
    return ch;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

TEST(Proposed, PositiveRealChannelGivesIdentity)
{
    const auto bf = twr::build_proposed(real_pair({0.5, 2.0, 1.0}, {1.5, 0.1, 3.0}));
    EXPECT_TRUE(bf.q.isApprox(twr::ComplexMatrix::Identity(3, 3), 1e-15));
    EXPECT_EQ(bf.scheme, twr::Scheme::Proposed);
}

TEST(Proposed, SinglePhaseRotation)
{
    ChannelPair ch{ComplexVector(1), ComplexVector(1)};
    ch.h[0] = Complex(0.0, 1.0);
    ch.g[0] = Complex(1.0, 0.0);
    const auto bf = twr::build_proposed(ch);
    EXPECT_NEAR(bf.q(0, 0).real(), 0.0, 1e-15);
    EXPECT_NEAR(bf.q(0, 0).imag(), -1.0, 1e-15);
}

TEST(Proposed, CoherentCombiningIsRealAndNonnegative)
{
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto s = twr::substream(21, t);
        const auto ch = twr::sample_channel_pair(1 + static_cast<int>(t % 6), s);
        const Complex v = (ch.h.transpose() * twr::build_proposed(ch).q * ch.g).value();
        double expected = 0.0;
        for (Eigen::Index m = 0; m < ch.size(); ++m) expected += std::abs(ch.h[m]) * std::abs(ch.g[m]);
        EXPECT_NEAR(v.real(), expected, 1e-12 * expected);
        EXPECT_LT(std::abs(v.imag()), 1e-12 * expected);
    }
}

TEST(Proposed, ZeroEntryGetsZeroPhase)
{
    const auto bf = twr::build_proposed(real_pair({0.0, 1.0}, {1.0, 1.0}));
    EXPECT_EQ(bf.q(0, 0), Complex(1.0, 0.0));
}

TEST(General, HandEvaluatedSingleAntenna)
{
    const auto ch = real_pair({1.0}, {1.0});
    const auto s = twr::snr_pair_general(ch, twr::build_direct_af(1), 1.0);
    EXPECT_DOUBLE_EQ(s.snr1, 0.25);
    EXPECT_DOUBLE_EQ(s.snr2, 0.25);
    const double rho = 1e9;
    EXPECT_NEAR(twr::snr_pair_general(ch, twr::build_direct_af(1), rho).snr1 / (rho / 3.0), 1.0, 1e-9);
}

TEST(General, DimensionMismatchRejected)
{
    const auto ch = real_pair({1.0, 2.0}, {1.0, 2.0});
    EXPECT_THROW(twr::snr_pair_general(ch, twr::build_direct_af(3), 1.0), twr::InvalidDimension);
}

TEST(General, NonPositiveRhoRejected)
{
    const auto ch = real_pair({1.0}, {1.0});
    EXPECT_THROW(twr::snr_pair_general(ch, twr::build_direct_af(1), 0.0), twr::DomainError);
    EXPECT_THROW(twr::snr_pair_proposed(ch, -1.0), twr::DomainError);
}

TEST(ProposedClosedForm, SingleAntennaQuarter)
{
    EXPECT_DOUBLE_EQ(twr::snr_pair_proposed(real_pair({1.0}, {1.0}), 1.0).snr1, 0.25);
}

TEST(ProposedClosedForm, AllOnes)
{
    for (int n = 1; n <= 6; ++n) {
        ChannelPair ch{ComplexVector::Ones(n), ComplexVector::Ones(n)};
        for (double rho : {0.1, 1.0, 50.0}) {
            const auto s = twr::snr_pair_proposed(ch, rho);
            EXPECT_NEAR(s.snr1, n * rho / (3.0 + 1.0 / rho), 1e-12 * n * rho);
            EXPECT_DOUBLE_EQ(s.snr1, s.snr2);
        }
    }
}

TEST(ProposedClosedForm, MatchesGeneralPath)
{
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
        for (std::uint64_t t = 0; t < 10000; ++t) {
            auto s = twr::substream(1000 + n, t);
            const auto ch = twr::sample_channel_pair(n, s);
            const auto bf = twr::build_proposed(ch);
            for (double rho : {0.1, 1.0, 100.0}) {
                const auto a = twr::snr_pair_proposed(ch, rho);
                const auto b = twr::snr_pair_general(ch, bf, rho);
                worst = std::max({worst, rel_diff(a.snr1, b.snr1), rel_diff(a.snr2, b.snr2)});
            }
        }
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(ProposedClosedForm, SwappingSourcesSwapsSnrs)
{
    auto s = twr::substream(77, 0);
    const auto ch = twr::sample_channel_pair(3, s);
    const ChannelPair swapped{ch.g, ch.h};
    const auto a = twr::snr_pair_proposed(ch, 10.0);
    const auto b = twr::snr_pair_proposed(swapped, 10.0);
    EXPECT_DOUBLE_EQ(a.snr1, b.snr2);
    EXPECT_DOUBLE_EQ(a.snr2, b.snr1);
}

TEST(ProposedClosedForm, IncreasesWithRho)
{
    auto s = twr::substream(78, 0);
    const auto ch = twr::sample_channel_pair(3, s);
    double previous = 0.0;
    for (double rho = 0.01; rho < 1e6; rho *= 3.0) {
        const double v = twr::snr_pair_proposed(ch, rho).snr1;
        EXPECT_GT(v, previous);
        previous = v;
    }
}

TEST(DirectAF, IsIdentity)
{
    const auto bf = twr::build_direct_af(2);
    EXPECT_TRUE(bf.q.isApprox(twr::ComplexMatrix::Identity(2, 2)));
    EXPECT_EQ(bf.scheme, twr::Scheme::DirectAF);
}

TEST(DirectAF, SingleAntennaMatchesProposed)
{
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto s = twr::substream(5, t);
        const auto ch = twr::sample_channel_pair(1, s);
        const auto a = twr::snr_pair_general(ch, twr::build_direct_af(1), 3.0);
        const auto b = twr::snr_pair_proposed(ch, 3.0);
        EXPECT_LT(rel_diff(a.snr1, b.snr1), 1e-12);
        EXPECT_LT(rel_diff(a.snr2, b.snr2), 1e-12);
    }
}

TEST(Selection, SingleAntennaAlwaysFirst)
{
    auto s = twr::substream(6, 0);
    const auto bf = twr::build_antenna_selection(twr::sample_channel_pair(1, s), 10.0);
    EXPECT_EQ(bf.selected, 0);
    EXPECT_EQ(bf.scheme, twr::Scheme::AntennaSelection);
}

TEST(Selection, DominantAntennaChosen)
{
    const auto bf = twr::build_antenna_selection(real_pair({10.0, 1.0}, {10.0, 1.0}), 10.0);
    EXPECT_EQ(bf.selected, 0);
    EXPECT_EQ(bf.q(0, 0), Complex(1.0, 0.0));
    EXPECT_EQ(bf.q(1, 1), Complex(0.0, 0.0));
}

TEST(Selection, TieGoesToSmallerIndex)
{
    const auto bf = twr::build_antenna_selection(real_pair({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}), 10.0);
    EXPECT_EQ(bf.selected, 0);
}

TEST(Selection, MatchesExhaustiveSearch)
{
    for (std::uint64_t t = 0; t < 2000; ++t) {
        auto s = twr::substream(31, t);
        const int n = 2 + static_cast<int>(t % 5);
        const auto ch = twr::sample_channel_pair(n, s);
        const double rho = (t % 2) ? 5.0 : 300.0;
        Eigen::Index best = -1;
        double best_value = -1.0;
        for (Eigen::Index k = 0; k < n; ++k) {
            // one active antenna: scalar formulas written out by hand
            const double x1 = std::norm(ch.h[k]);
            const double x2 = std::norm(ch.g[k]);
            const double sig = x1 * x2 * rho;
            const double worst = std::min(sig / (2 * x1 + x2 + 1 / rho), sig / (2 * x2 + x1 + 1 / rho));
            if (worst > best_value) {
                best_value = worst;
                best = k;
            }
        }
        EXPECT_EQ(twr::build_antenna_selection(ch, rho).selected, best);
    }
}

TEST(WStatistic, EqualityCase)
{
    for (int n = 1; n <= 8; ++n) {
        ChannelPair ch{ComplexVector::Ones(n), ComplexVector::Ones(n)};
        EXPECT_NEAR(twr::w_statistic(ch), n, 1e-12);
    }
}

TEST(WStatistic, SingleAntennaIsOne)
{
    for (std::uint64_t t = 0; t < 100; ++t) {
        auto s = twr::substream(8, t);
        EXPECT_EQ(twr::w_statistic(twr::sample_channel_pair(1, s)), 1.0);
    }
}

TEST(WStatistic, NearOrthogonalModuli)
{
    const double eps = 1e-3;
    ChannelPair ch{ComplexVector(2), ComplexVector(2)};
    ch.h << Complex(1.0, 0.0), Complex(0.0, eps);
    ch.g << Complex(eps, 0.0), Complex(1.0, 0.0);
    const double expected = (2 * eps) * (2 * eps) / (0.5 * (1 + eps * eps) * (1 + eps * eps));
    EXPECT_NEAR(twr::w_statistic(ch), expected, 1e-15);
    EXPECT_LT(twr::w_statistic(ch), 0.01);
}

TEST(WStatistic, ZeroNormRejected)
{
    ChannelPair ch{ComplexVector::Zero(2), ComplexVector::Ones(2)};
    EXPECT_THROW(twr::w_statistic(ch), twr::DegenerateInput);
}

} // namespace
