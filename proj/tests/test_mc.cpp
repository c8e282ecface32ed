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

#include <cmath>
#include <numbers>
#include <vector>

#include "twr/analysis.hpp"
#include "twr/mc.hpp"

namespace {

twr::SweepConfig config(int n, twr::Scheme scheme, double gamma, std::vector<double> grid, std::uint64_t trials)
{
    twr::SweepConfig cfg;
    cfg.n = n;
    cfg.scheme = scheme;
    cfg.gamma_th = gamma;
    cfg.rho_grid_db = std::move(grid);
    cfg.trials = trials;
    cfg.master_seed = 17;
    return cfg;
}

const std::vector<twr::Scheme> kSchemes = {twr::Scheme::Proposed, twr::Scheme::AntennaSelection,
                                           twr::Scheme::DirectAF};

TEST(Outage, ZeroThresholdNeverFails)
{
    for (auto scheme : kSchemes) {
        const auto curve = twr::estimate_outage(config(3, scheme, 0.0, {0, 10, 20}, 20000));
        for (const auto &pt : curve.points) {
            EXPECT_EQ(pt.outage, 0.0);
            EXPECT_EQ(pt.std_error, 0.0);
        }
    }
}

TEST(Outage, HugeThresholdAlwaysFails)
{
    for (auto scheme : kSchemes) {
        const auto curve = twr::estimate_outage(config(3, scheme, 1e9, {0}, 20000));
        EXPECT_EQ(curve.points[0].outage, 1.0);
    }
}

TEST(Outage, IdenticalAcrossThreadCounts)
{
    for (auto scheme : kSchemes) {
        const auto cfg = config(3, scheme, 1.0, {0, 5, 10, 15}, 30000);
        const auto a = twr::estimate_outage(cfg, 1);
        const auto b = twr::estimate_outage(cfg, 3);
        const auto c = twr::estimate_outage(cfg, 8);
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            EXPECT_EQ(a.points[i].outage, b.points[i].outage);
            EXPECT_EQ(a.points[i].outage, c.points[i].outage);
        }
    }
}

TEST(Outage, MonotoneInRho)
{
    for (auto scheme : kSchemes) {
        const auto curve = twr::estimate_outage(config(2, scheme, 1.0, {0, 2, 4, 6, 8, 10, 12, 14}, 50000));
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            EXPECT_LE(curve.points[i].outage, curve.points[i - 1].outage);
        }
    }
}

TEST(Outage, EitherSourceAtLeastSourceOne)
{
    auto cfg = config(3, twr::Scheme::Proposed, 1.0, {0, 5, 10}, 40000);
    const auto one = twr::estimate_outage(cfg);
    cfg.event = twr::OutageEvent::EitherSource;
    const auto either = twr::estimate_outage(cfg);
    for (std::size_t i = 0; i < one.points.size(); ++i) {
        EXPECT_GE(either.points[i].outage, one.points[i].outage);
    }
}

TEST(Outage, ProposedBelowGammaVariateBound)
{
    // the bound is the outage of a weaker SNR, so it must dominate on average
    const auto curve = twr::estimate_outage(config(3, twr::Scheme::Proposed, 1.0, {5, 10}, 200000));
    for (const auto &pt : curve.points) {
        const double bound = twr::bound_semi_analytic({3, 1.0, twr::db_to_linear(pt.rho_db)}).raw;
        EXPECT_LE(pt.outage, bound + 3.0 * pt.std_error);
    }
}

TEST(Outage, InvalidConfigs)
{
    EXPECT_THROW(twr::estimate_outage(config(3, twr::Scheme::Proposed, 1.0, {0}, 0)), twr::InvalidArgument);
    EXPECT_THROW(twr::estimate_outage(config(0, twr::Scheme::Proposed, 1.0, {0}, 10)), twr::InvalidDimension);
    EXPECT_THROW(twr::estimate_outage(config(2, twr::Scheme::Proposed, -1.0, {0}, 10)), twr::InvalidArgument);
    EXPECT_THROW(twr::estimate_outage(config(2, twr::Scheme::Proposed, 1.0, {}, 10)), twr::InvalidArgument);
    EXPECT_THROW(twr::estimate_outage(config(2, twr::Scheme::Proposed, 1.0, {5, 5}, 10)), twr::InvalidArgument);
}

TEST(WCdf, CapAtN)
{
    for (int n = 1; n <= 6; ++n) {
        const auto est = twr::estimate_w_cdf(n, {0.5 * n, static_cast<double>(n)}, 20000, 3);
        EXPECT_EQ(est.cdf.back(), 1.0);
    }
}

TEST(WCdf, SingleAntennaIsDegenerate)
{
    const double eps = 1e-9;
    const auto est = twr::estimate_w_cdf(1, {1.0 - eps, 1.0 + eps}, 10000, 3);
    EXPECT_EQ(est.cdf[0], 0.0);
    EXPECT_EQ(est.cdf[1], 1.0);
}

TEST(WCdf, ThreeAntennasMostlyAboveOne)
{
    const auto est = twr::estimate_w_cdf(3, {1.0}, 100000, 42);
    EXPECT_LE(est.cdf[0], 0.05);
}

TEST(WCdf, SingleTrialAndMonotone)
{
    const auto one = twr::estimate_w_cdf(4, {0.5, 1.0, 2.0, 4.0}, 1, 3);
    for (double v : one.cdf) {
        EXPECT_TRUE(v == 0.0 || v == 1.0);
    }
    const auto many = twr::estimate_w_cdf(4, {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0}, 20000, 3);
    for (std::size_t i = 1; i < many.cdf.size(); ++i) {
        EXPECT_GE(many.cdf[i], many.cdf[i - 1]);
    }
}

TEST(WCdf, RejectsUnsortedThresholds)
{
    EXPECT_THROW(twr::estimate_w_cdf(3, {1.0, 0.5}, 100, 3), twr::InvalidArgument);
}

TEST(WMoment, SingleAntennaExact)
{
    const auto r = twr::w_moment_check(1, 10000, 5);
    EXPECT_EQ(r.mean, 1.0);
    EXPECT_TRUE(r.matches_derived);
}

TEST(WMoment, FourAntennasFavourDerivedConstant)
{
    const auto r = twr::w_moment_check(4, 1000000, 5);
    EXPECT_TRUE(r.matches_derived) << r.mean << " +- " << r.std_error;
    EXPECT_FALSE(r.matches_asserted);
    EXPECT_NEAR(r.derived_constant, 1.0 + 3.0 * std::numbers::pi * std::numbers::pi / 16.0, 1e-15);
}

TEST(WMoment, LinearInN)
{
    std::vector<double> xs, ys;
    for (int n = 2; n <= 8; ++n) {
        xs.push_back(n);
        ys.push_back(twr::w_moment_check(n, 200000, 6).mean);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    EXPECT_NEAR(sxy / sxx, std::numbers::pi * std::numbers::pi / 16.0, 0.01);
    EXPECT_GT(sxy * sxy / (sxx * syy), 0.999);
}

TEST(WMoment, TooFewTrials)
{
    EXPECT_THROW(twr::w_moment_check(3, 9999, 1), twr::InvalidArgument);
}

twr::OutageCurve power_law(double c, double order)
{
    twr::OutageCurve curve;
    for (double db = 0.0; db <= 40.0; db += 5.0) {
        curve.points.push_back({db, c * std::pow(twr::db_to_linear(db), -order), 0.0, 0});
    }
    return curve;
}

TEST(RequiredSnr, GridHitAndInterpolation)
{
    const auto curve = power_law(0.5, 2.0);
    EXPECT_EQ(twr::required_snr_at(curve, curve.points[3].outage), curve.points[3].rho_db);
    EXPECT_NEAR(twr::required_snr_at(curve, 0.5e-4), 20.0, 1e-9);
    EXPECT_NEAR(twr::required_snr_at(curve, 0.5 * std::pow(10.0, -2.4)), 12.0, 1e-9);
}

TEST(RequiredSnr, OutOfRange)
{
    const auto curve = power_law(0.5, 2.0);
    EXPECT_THROW(twr::required_snr_at(curve, 0.9), twr::OutOfRange);
    EXPECT_THROW(twr::required_snr_at(curve, 1e-30), twr::OutOfRange);
    EXPECT_THROW(twr::required_snr_at(twr::OutageCurve{}, 0.1), twr::OutOfRange);
}

TEST(RequiredSnr, ZeroLowerPointInterpolatesLinearly)
{
    twr::OutageCurve curve;
    curve.points = {{0.0, 0.2, 0.0, 0}, {10.0, 0.0, 0.0, 0}};
    EXPECT_NEAR(twr::required_snr_at(curve, 0.1), 5.0, 1e-12);
}

TEST(RequiredSnr, SelectionNeedsMoreSnrAtThreeAntennas)
{
    std::vector<double> grid;
    for (double db = 6.0; db <= 18.0; db += 1.0) grid.push_back(db);
    const auto prop = twr::estimate_outage(config(3, twr::Scheme::Proposed, 1.0, grid, 200000));
    const auto sel = twr::estimate_outage(config(3, twr::Scheme::AntennaSelection, 1.0, grid, 200000));
    const double gap = twr::required_snr_at(sel, 1e-2) - twr::required_snr_at(prop, 1e-2);
    EXPECT_NEAR(gap, 1.3, 0.7);
}

TEST(Naming, SchemeStrings)
{
    EXPECT_EQ(twr::to_string(twr::Scheme::Proposed), "proposed");
    EXPECT_EQ(twr::to_string(twr::Scheme::AntennaSelection), "selection");
    EXPECT_EQ(twr::to_string(twr::Scheme::DirectAF), "direct");
    EXPECT_EQ(twr::to_string(twr::BoundMethod::SemiAnalytic), "semi");
}

} // namespace
