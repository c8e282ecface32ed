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
#include <limits>
#include <numbers>

#include "twr/channel.hpp"

namespace {

TEST(Channel, SameStreamStateGivesSamePair)
{
    auto a = twr::substream(3, 0);
    auto b = twr::substream(3, 0);
    const auto x = twr::sample_channel_pair(1, a);
    const auto y = twr::sample_channel_pair(1, b);
    EXPECT_EQ(x.h, y.h);
    EXPECT_EQ(x.g, y.g);
}

TEST(Channel, ZeroAntennasRejected)
{
    auto s = twr::substream(3, 0);
    EXPECT_THROW(twr::sample_channel_pair(0, s), twr::InvalidDimension);
}

TEST(Channel, ValidateCatchesBadPairs)
{
    twr::ChannelPair ch{twr::ComplexVector::Ones(2), twr::ComplexVector::Ones(3)};
    EXPECT_THROW(ch.validate(), twr::InvalidDimension);
    ch.g = twr::ComplexVector::Ones(2);
    ch.g[1] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
    EXPECT_THROW(ch.validate(), twr::DomainError);
    twr::ChannelPair empty;
    EXPECT_THROW(empty.validate(), twr::InvalidDimension);
}

TEST(Channel, Moments)
{
    const int draws = 1000000;
    auto s = twr::substream(11, 0);
    double power = 0.0, modulus = 0.0;
    double re = 0.0, re2 = 0.0, im = 0.0, im2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        const twr::Complex z = twr::complex_gaussian(s);
        power += std::norm(z);
        modulus += std::abs(z);
        re += z.real();
        re2 += z.real() * z.real();
        im += z.imag();
        im2 += z.imag() * z.imag();
    }
    EXPECT_NEAR(power / draws, 1.0, 0.005);
    EXPECT_NEAR(modulus / draws, std::sqrt(std::numbers::pi) / 2.0, 0.005);

    // var of a N(0, 1/2) sample variance is 2 sigma^4 / n = 0.5 / n
    const double se = std::sqrt(0.5 / draws);
    const double var_re = re2 / draws - (re / draws) * (re / draws);
    const double var_im = im2 / draws - (im / draws) * (im / draws);
    EXPECT_NEAR(var_re, 0.5, 3.0 * se);
    EXPECT_NEAR(var_im, 0.5, 3.0 * se);
}

TEST(Channel, PairHasRequestedSize)
{
    auto s = twr::substream(5, 9);
    const auto ch = twr::sample_channel_pair(4, s);
    EXPECT_EQ(ch.size(), 4);
    EXPECT_EQ(ch.g.size(), 4);
    EXPECT_NO_THROW(ch.validate());
}

} // namespace
