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

// Monte-Carlo outage and w-statistic estimation.
//
// Trial t always draws its channels from substream(master_seed, t) and the
// same channels are reused at every SNR point of the grid, so curves are
// smooth in rho and monotone by construction. Outage counts are integers and
// floating means are folded block by block in a fixed order; results do not
// depend on the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "twr/beamform.hpp"
#include "twr/channel.hpp"
#include "twr/curve.hpp"
#include "twr/errors.hpp"
#include "twr/parallel.hpp"
#include "twr/rng.hpp"

namespace twr {

inline std::string_view to_string(Scheme s) noexcept
{
    switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::DirectAF: return "direct";
    case Scheme::AntennaSelection: return "selection";
    }
    return "?";
}

// Which failure counts as an outage.
enum class OutageEvent {
    SourceOne,    // SNR_1 < gamma_th; S2 is identically distributed
    EitherSource, // min(SNR_1, SNR_2) < gamma_th
};

struct SweepConfig {
    int n = 2;
    Scheme scheme = Scheme::Proposed;
    double gamma_th = 1.0;
    std::vector<double> rho_grid_db;
    std::uint64_t trials = 100000;
    std::uint64_t master_seed = 42;
    OutageEvent event = OutageEvent::SourceOne;

    void validate() const
    {
        if (n < 1) {
            throw InvalidDimension("antenna count must be >= 1, got " + std::to_string(n));
        }
        if (trials < 1) {
            throw InvalidArgument("trials must be >= 1");
        }
        if (std::isnan(gamma_th) || gamma_th < 0.0) {
            throw InvalidArgument("gamma_th must be >= 0");
        }
        if (rho_grid_db.empty()) {
            throw InvalidArgument("rho grid is empty");
        }
        for (std::size_t i = 0; i < rho_grid_db.size(); ++i) {
            if (!std::isfinite(rho_grid_db[i]) || (i > 0 && !(rho_grid_db[i] > rho_grid_db[i - 1]))) {
                throw InvalidArgument("rho grid must be finite and strictly increasing");
            }
        }
    }
};

inline OutageCurve estimate_outage(const SweepConfig &cfg, unsigned threads = 0)
{
    cfg.validate();
    const std::size_t points = cfg.rho_grid_db.size();
    std::vector<double> rho(points);
    std::transform(cfg.rho_grid_db.begin(), cfg.rho_grid_db.end(), rho.begin(), db_to_linear);

    auto failed = [&](const SnrPair &s) {
        return cfg.event == OutageEvent::SourceOne ? s.snr1 < cfg.gamma_th
                                                   : std::min(s.snr1, s.snr2) < cfg.gamma_th;
    };

    using Counts = std::vector<std::uint64_t>;
    const Counts counts = block_reduce<Counts>(
        cfg.trials, threads, Counts(points, 0),
        [&](std::uint64_t begin, std::uint64_t end) {
            Counts local(points, 0);
            for (std::uint64_t t = begin; t < end; ++t) {
                RngStream stream = substream(cfg.master_seed, t);
                const ChannelPair ch = sample_channel_pair(cfg.n, stream);
                if (cfg.scheme == Scheme::AntennaSelection) {
                    // Per-antenna terms are rho-independent; only the choice moves with rho.
                    const auto terms = per_antenna_terms(ch);
                    for (std::size_t j = 0; j < points; ++j) {
                        const auto k = static_cast<std::size_t>(select_antenna(terms, rho[j]));
                        local[j] += failed(evaluate_snr(terms[k], rho[j])) ? 1 : 0;
                    }
                } else {
                    const Beamformer bf =
                        cfg.scheme == Scheme::Proposed ? build_proposed(ch) : build_direct_af(cfg.n);
                    const SnrTerms terms = snr_terms(ch, bf);
                    for (std::size_t j = 0; j < points; ++j) {
                        local[j] += failed(evaluate_snr(terms, rho[j])) ? 1 : 0;
                    }
                }
            }
            return local;
        },
        [](Counts &acc, const Counts &part) {
            for (std::size_t j = 0; j < acc.size(); ++j) {
                acc[j] += part[j];
            }
        });

    OutageCurve curve;
    curve.points.reserve(points);
    for (std::size_t j = 0; j < points; ++j) {
        const double p = static_cast<double>(counts[j]) / static_cast<double>(cfg.trials);
        curve.points.push_back({cfg.rho_grid_db[j], p, binomial_stderr(p, cfg.trials), cfg.trials});
    }
    return curve;
}

struct CdfEstimate {
    std::vector<double> thresholds;
    std::vector<double> cdf; // Pr{w <= threshold}
    std::uint64_t trials = 0;
};

inline CdfEstimate estimate_w_cdf(int n, const std::vector<double> &thresholds, std::uint64_t trials,
                                  std::uint64_t seed, unsigned threads = 0)
{
    if (n < 1) {
        throw InvalidDimension("antenna count must be >= 1, got " + std::to_string(n));
    }
    if (trials < 1) {
        throw InvalidArgument("trials must be >= 1");
    }
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw InvalidArgument("w thresholds must be sorted");
    }
    using Counts = std::vector<std::uint64_t>;
    const std::size_t m = thresholds.size();
    // counts[i]: trials whose w lands in (thresholds[i-1], thresholds[i]].
    const Counts counts = block_reduce<Counts>(
        trials, threads, Counts(m, 0),
        [&](std::uint64_t begin, std::uint64_t end) {
            Counts local(m, 0);
            for (std::uint64_t t = begin; t < end; ++t) {
                RngStream stream = substream(seed, t);
                const double w = w_statistic(sample_channel_pair(n, stream));
                const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), w);
                if (it != thresholds.end()) {
                    ++local[static_cast<std::size_t>(it - thresholds.begin())];
                }
            }
            return local;
        },
        [](Counts &acc, const Counts &part) {
            for (std::size_t i = 0; i < acc.size(); ++i) {
                acc[i] += part[i];
            }
        });

    CdfEstimate est{thresholds, std::vector<double>(m), trials};
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < m; ++i) {
        running += counts[i];
        est.cdf[i] = static_cast<double>(running) / static_cast<double>(trials);
    }
    return est;
}

// Empirical E[w] against two candidate constants:
//   asserted:   1 + (N-1) pi^2 / 2
//   derived:    1 + (N-1) pi^2 / 16, from E|h_m| = E|g_m| = sqrt(pi)/2. It is
//               also the exact finite-N mean: the moduli direction of h is
//               Dirichlet(1,...,1) distributed, E[sqrt(D_1 D_2)] = pi / (4N).
struct WMomentReport {
    int n = 0;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double asserted_constant = 0.0;
    double derived_constant = 0.0;
    bool matches_asserted = false; // within 3 standard errors (or 1e-12 when degenerate)
    bool matches_derived = false;
};

inline WMomentReport w_moment_check(int n, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0)
{
    if (n < 1) {
        throw InvalidDimension("antenna count must be >= 1, got " + std::to_string(n));
    }
    if (trials < 10000) {
        throw InvalidArgument("w_moment_check needs >= 1e4 trials");
    }
    struct Sums {
        double s1 = 0.0;
        double s2 = 0.0;
    };
    const Sums sums = block_reduce<Sums>(
        trials, threads, Sums{},
        [&](std::uint64_t begin, std::uint64_t end) {
            Sums local;
            for (std::uint64_t t = begin; t < end; ++t) {
                RngStream stream = substream(seed, t);
                const double w = w_statistic(sample_channel_pair(n, stream));
                local.s1 += w;
                local.s2 += w * w;
            }
            return local;
        },
        [](Sums &acc, const Sums &part) {
            acc.s1 += part.s1;
            acc.s2 += part.s2;
        });

    WMomentReport r;
    r.n = n;
    r.trials = trials;
    const auto count = static_cast<double>(trials);
    r.mean = sums.s1 / count;
    const double variance = std::max(0.0, sums.s2 / count - r.mean * r.mean) * count / (count - 1.0);
    r.std_error = std::sqrt(variance / count);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    r.asserted_constant = 1.0 + 0.5 * (n - 1) * pi2;
    r.derived_constant = 1.0 + (n - 1) * pi2 / 16.0;
    const double band = std::max(3.0 * r.std_error, 1e-12);
    r.matches_asserted = std::abs(r.mean - r.asserted_constant) <= band;
    r.matches_derived = std::abs(r.mean - r.derived_constant) <= band;
    return r;
}

// SNR (dB) at which the curve first falls to `target_outage`, interpolating
// log10(outage) linearly in dB between the bracketing grid points (linearly in
// outage when the lower point is zero).
inline double required_snr_at(const OutageCurve &curve, double target_outage)
{
    const auto &pts = curve.points;
    if (pts.empty() || !(target_outage > 0.0)) {
        throw OutOfRange("required SNR needs a non-empty curve and a positive target");
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].outage == target_outage) {
            return pts[i].rho_db;
        }
        if (i + 1 < pts.size() && pts[i].outage > target_outage && pts[i + 1].outage < target_outage) {
            const double hi = pts[i].outage;
            const double lo = pts[i + 1].outage;
            double frac;
            if (lo > 0.0) {
                frac = (std::log10(hi) - std::log10(target_outage)) / (std::log10(hi) - std::log10(lo));
            } else {
                frac = (hi - target_outage) / (hi - lo);
            }
            return pts[i].rho_db + frac * (pts[i + 1].rho_db - pts[i].rho_db);
        }
    }
    throw OutOfRange("target outage " + std::to_string(target_outage) + " is not crossed on the SNR grid [" +
                     std::to_string(pts.front().rho_db) + ", " + std::to_string(pts.back().rho_db) + "] dB");
}

} // namespace twr
