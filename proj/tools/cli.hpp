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

// Command-line front end. `run` is the whole program minus process setup so
// that tests can drive it in-process.
//
// Exit codes: 0 ok, 1 internal, 2 usage, 3 I/O, 4 convergence, 5 out of range.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twr/twr.hpp"

namespace twr::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kIo = 3, kConvergence = 4, kOutOfRange = 5 };

class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

using ordered_json = nlohmann::ordered_json;

// Shortest decimal that parses back to the same double.
inline std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string &text)
{
    const std::string trimmed = text.substr(0, text.find_last_not_of(" \t") + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(trimmed, &used);
    } catch (const std::exception &) {
        throw UsageError("not a number: '" + text + "'");
    }
    if (used != trimmed.size() || !std::isfinite(v)) {
        throw UsageError("not a finite number: '" + text + "'");
    }
    return v;
}

inline std::vector<std::string> split(const std::string &text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

// "lo:step:hi" (inclusive), a comma list, or a single value.
inline std::vector<double> parse_grid(const std::string &spec)
{
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3) {
            throw UsageError("grid spec must be lo:step:hi, got '" + spec + "'");
        }
        const double lo = parse_double(parts[0]);
        const double step = parse_double(parts[1]);
        const double hi = parse_double(parts[2]);
        if (hi < lo || (!(step > 0.0) && hi != lo)) {
            throw UsageError("grid spec needs hi >= lo and step > 0, got '" + spec + "'");
        }
        if (hi == lo) {
            return {lo};
        }
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1000000) {
            throw UsageError("grid spec '" + spec + "' has too many points");
        }
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i) {
            grid[i] = lo + static_cast<double>(i) * step;
        }
        if (std::abs(grid.back() - hi) <= 1e-9 * step) {
            grid.back() = hi;
        }
        return grid;
    }
    std::vector<double> grid;
    for (const auto &item : split(spec, ',')) {
        grid.push_back(parse_double(item));
    }
    if (grid.empty()) {
        throw UsageError("empty grid");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw UsageError("grid must be strictly increasing: '" + spec + "'");
        }
    }
    return grid;
}

inline std::vector<int> parse_n_list(const std::string &spec)
{
    std::vector<int> out;
    for (const auto &item : split(spec, ',')) {
        int v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || v < 1 || v > 64) {
            throw UsageError("antenna counts must be integers in [1, 64], got '" + item + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw UsageError("empty antenna list");
    }
    return out;
}

inline Scheme parse_scheme(const std::string &name)
{
    if (name == "proposed") return Scheme::Proposed;
    if (name == "selection") return Scheme::AntennaSelection;
    if (name == "direct") return Scheme::DirectAF;
    throw UsageError("unknown scheme '" + name + "' (expected proposed, selection or direct)");
}

inline BoundMethod parse_method(const std::string &name)
{
    if (name == "printed") return BoundMethod::PrintedClosedForm;
    if (name == "semi") return BoundMethod::SemiAnalytic;
    if (name == "mc") return BoundMethod::GammaVariateMC;
    if (name == "asymptotic") return BoundMethod::Asymptotic;
    throw UsageError("unknown method '" + name + "' (expected printed, semi, mc or asymptotic)");
}

inline std::string timestamp_utc()
{
    std::time_t t = std::time(nullptr);
    if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

inline ordered_json manifest(const std::string &command, std::uint64_t seed, const ordered_json &config)
{
    ordered_json m;
    m["tool"] = "twr";
    m["version"] = kVersion;
    m["generator"] = std::string(kGeneratorName);
    m["generator_layout"] = kGeneratorLayoutVersion;
    m["command"] = command;
    m["seed"] = seed;
    m["config"] = config;
    m["uncertainty"] = "stderr is +-1 binomial standard error sqrt(p(1-p)/trials)";
    m["timestamp"] = timestamp_utc();
    return m;
}

inline std::string manifest_comment(const ordered_json &m)
{
    std::string out;
    for (const auto &[key, value] : m.items()) {
        out += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
    return out;
}

struct Common {
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string out = "-";
    std::string n_list;
    std::uint64_t trials = 0;
    std::optional<double> gamma_th;
    std::optional<double> rate_th;
    std::string rho_db;
};

inline double resolve_gamma(const Common &c)
{
    if (c.gamma_th && c.rate_th) {
        throw UsageError("give either --gamma-th or --rate-th, not both");
    }
    double g = 1.0;
    if (c.rate_th) {
        if (!(*c.rate_th > 0.0)) {
            throw UsageError("--rate-th must be positive");
        }
        g = gamma_from_rate(*c.rate_th);
    } else if (c.gamma_th) {
        g = *c.gamma_th;
    }
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw UsageError("SNR threshold must be positive");
    }
    return g;
}

inline void require_trials(std::uint64_t trials)
{
    if (trials < 1) {
        throw UsageError("--trials must be >= 1");
    }
}

inline void emit(const std::string &path, const std::string &content, std::ostream &stdout_stream)
{
    if (path.empty() || path == "-") {
        stdout_stream << content;
        stdout_stream.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open output file '" + path + "'");
    }
    file << content;
    file.close();
    if (!file) {
        throw IoError("failed writing output file '" + path + "'");
    }
}

inline std::string cmd_wcdf(const Common &c, const std::string &thresholds_spec)
{
    const auto ns = parse_n_list(c.n_list);
    require_trials(c.trials);
    std::optional<std::vector<double>> fixed;
    if (!thresholds_spec.empty()) {
        fixed = parse_grid(thresholds_spec);
    }
    ordered_json config;
    config["n_list"] = ns;
    config["trials"] = c.trials;
    config["thresholds"] = thresholds_spec.empty() ? std::string("0:0.05:N") : thresholds_spec;

    std::string body = "n,threshold,cdf,trials\n";
    for (int n : ns) {
        const auto grid = fixed ? *fixed : parse_grid("0:0.05:" + std::to_string(n));
        const CdfEstimate est = estimate_w_cdf(n, grid, c.trials, c.seed, c.threads);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            body += std::to_string(n) + "," + format_number(grid[i]) + "," + format_number(est.cdf[i]) + "," +
                    std::to_string(c.trials) + "\n";
        }
    }
    return manifest_comment(manifest("wcdf", c.seed, config)) + body;
}

inline std::string cmd_bound(const Common &c, const std::string &methods_spec)
{
    const auto ns = parse_n_list(c.n_list);
    const auto grid = parse_grid(c.rho_db);
    const double gamma = resolve_gamma(c);
    std::vector<BoundMethod> methods;
    for (const auto &name : split(methods_spec, ',')) {
        methods.push_back(parse_method(name));
    }
    if (methods.empty()) {
        throw UsageError("--methods is empty");
    }
    const bool has_mc = std::find(methods.begin(), methods.end(), BoundMethod::GammaVariateMC) != methods.end();
    if (has_mc) {
        require_trials(c.trials);
    }

    ordered_json config;
    config["n_list"] = ns;
    config["gamma_th"] = gamma;
    if (c.rate_th) {
        config["rate_th"] = *c.rate_th;
    }
    config["rho_db"] = grid;
    config["methods"] = methods_spec;
    if (has_mc) {
        config["trials"] = c.trials;
    }

    std::string body = "n,rho_db,method,value,stderr,raw\n";
    for (int n : ns) {
        for (double db : grid) {
            const BoundParams p{n, gamma, db_to_linear(db)};
            for (BoundMethod m : methods) {
                BoundValue v;
                switch (m) {
                case BoundMethod::PrintedClosedForm: v = bound_printed(p); break;
                case BoundMethod::SemiAnalytic: v = bound_semi_analytic(p); break;
                case BoundMethod::GammaVariateMC: v = bound_mc(p, c.trials, c.seed, c.threads); break;
                case BoundMethod::Asymptotic: v = asymptotic_bound(p); break;
                }
                body += std::to_string(n) + "," + format_number(db) + "," + std::string(to_string(m)) + "," +
                        format_number(v.probability) + "," +
                        (m == BoundMethod::GammaVariateMC ? format_number(v.std_error) : std::string()) + "," +
                        (m == BoundMethod::PrintedClosedForm ? format_number(v.raw) : std::string()) + "\n";
            }
        }
    }
    return manifest_comment(manifest("bound", c.seed, config)) + body;
}

struct OutageRun {
    std::vector<int> ns;
    std::vector<Scheme> schemes;
    std::vector<double> grid;
    double gamma = 1.0;
    OutageEvent event = OutageEvent::SourceOne;
    ordered_json config;
};

inline OutageRun prepare_outage(const Common &c, const std::string &schemes_spec, const std::string &event_name)
{
    OutageRun run;
    run.ns = parse_n_list(c.n_list);
    run.grid = parse_grid(c.rho_db);
    run.gamma = resolve_gamma(c);
    require_trials(c.trials);
    for (const auto &name : split(schemes_spec, ',')) {
        run.schemes.push_back(parse_scheme(name));
    }
    if (run.schemes.empty()) {
        throw UsageError("--schemes is empty");
    }
    if (event_name == "s1") {
        run.event = OutageEvent::SourceOne;
    } else if (event_name == "either") {
        run.event = OutageEvent::EitherSource;
    } else {
        throw UsageError("--event must be s1 or either");
    }
    run.config["n_list"] = run.ns;
    run.config["schemes"] = schemes_spec;
    run.config["gamma_th"] = run.gamma;
    if (c.rate_th) {
        run.config["rate_th"] = *c.rate_th;
    }
    run.config["rho_db"] = run.grid;
    run.config["trials"] = c.trials;
    run.config["event"] = event_name;
    return run;
}

inline OutageCurve run_curve(const Common &c, const OutageRun &run, int n, Scheme scheme)
{
    SweepConfig cfg;
    cfg.n = n;
    cfg.scheme = scheme;
    cfg.gamma_th = run.gamma;
    cfg.rho_grid_db = run.grid;
    cfg.trials = c.trials;
    cfg.master_seed = c.seed;
    cfg.event = run.event;
    return estimate_outage(cfg, c.threads);
}

inline std::string cmd_outage(const Common &c, const std::string &schemes_spec, const std::string &event_name)
{
    const OutageRun run = prepare_outage(c, schemes_spec, event_name);
    std::string body = "n,scheme,rho_db,outage,stderr,trials\n";
    for (int n : run.ns) {
        for (Scheme s : run.schemes) {
            const OutageCurve curve = run_curve(c, run, n, s);
            for (const auto &pt : curve.points) {
                body += std::to_string(n) + "," + std::string(to_string(s)) + "," + format_number(pt.rho_db) + "," +
                        format_number(pt.outage) + "," + format_number(pt.std_error) + "," +
                        std::to_string(pt.trials) + "\n";
            }
        }
    }
    return manifest_comment(manifest("outage", c.seed, run.config)) + body;
}

inline std::string cmd_gap(const Common &c, const std::string &schemes_spec, const std::string &event_name,
                           double target)
{
    if (!(target > 0.0 && target < 1.0)) {
        throw UsageError("--target-outage must lie in (0, 1)");
    }
    OutageRun run = prepare_outage(c, schemes_spec, event_name);
    run.config["target_outage"] = target;

    ordered_json report;
    report["manifest"] = manifest("gap", c.seed, run.config);
    report["target_outage"] = target;
    ordered_json results = ordered_json::array();
    for (int n : run.ns) {
        std::vector<double> required;
        ordered_json per_scheme;
        for (Scheme s : run.schemes) {
            const OutageCurve curve = run_curve(c, run, n, s);
            try {
                required.push_back(required_snr_at(curve, target));
            } catch (const OutOfRange &e) {
                throw OutOfRange("n=" + std::to_string(n) + ", scheme=" + std::string(to_string(s)) + ": " +
                                 e.what());
            }
            per_scheme[std::string(to_string(s))] = required.back();
        }
        ordered_json gaps = ordered_json::array();
        for (std::size_t i = 0; i < run.schemes.size(); ++i) {
            for (std::size_t j = i + 1; j < run.schemes.size(); ++j) {
                ordered_json g;
                g["scheme"] = std::string(to_string(run.schemes[j]));
                g["reference"] = std::string(to_string(run.schemes[i]));
                g["gap_db"] = required[j] - required[i];
                gaps.push_back(g);
            }
        }
        ordered_json entry;
        entry["n"] = n;
        entry["required_snr_db"] = per_scheme;
        entry["gaps_db"] = gaps;
        results.push_back(entry);
    }
    report["results"] = results;
    return report.dump(2) + "\n";
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Two-way AF relay beamforming: outage simulation and analytical bounds", "twr"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Common c;
    app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads, 0 = auto (never changes results)")->capture_default_str();
    app.add_option("--out", c.out, "Output file, - for stdout")->capture_default_str();

    std::string thresholds;
    std::string methods = "semi,mc,asymptotic";
    std::string schemes = "proposed,selection,direct";
    std::string gap_schemes = "proposed,selection";
    std::string event = "s1";
    double target = 1e-2;

    auto *wcdf = app.add_subcommand("wcdf", "Empirical CDF of the w statistic");
    auto *bound = app.add_subcommand("bound", "Outage upper bound: printed, semi, mc, asymptotic");
    auto *outage = app.add_subcommand("outage", "Monte-Carlo outage per beamforming scheme");
    auto *gap = app.add_subcommand("gap", "Required-SNR gaps between schemes at a target outage (JSON)");
    for (auto *sub : {wcdf, bound, outage, gap}) {
        sub->fallthrough();
    }

    wcdf->add_option("--n-list", c.n_list, "Antenna counts, comma separated")->default_val("3,4,5,6");
    wcdf->add_option("--trials", c.trials, "Channel draws per N")->default_val(100000);
    wcdf->add_option("--thresholds", thresholds, "w grid lo:step:hi or list (default 0:0.05:N)");

    bound->add_option("--n-list", c.n_list, "Antenna counts")->default_val("2,3,4");
    bound->add_option("--gamma-th", c.gamma_th, "Linear SNR threshold (default 1)");
    bound->add_option("--rate-th", c.rate_th, "Rate threshold in bit/s/Hz; gamma_th = 2^(2R) - 1");
    bound->add_option("--rho-db", c.rho_db, "Average SNR grid in dB, lo:step:hi")->default_val("0:5:40");
    bound->add_option("--methods", methods, "Any of printed,semi,mc,asymptotic")->capture_default_str();
    bound->add_option("--trials", c.trials, "Gamma-variate trials for mc")->default_val(1000000);

    for (auto *sub : {outage, gap}) {
        sub->add_option("--n-list", c.n_list, "Antenna counts")->default_val("2,3,4");
        sub->add_option("--gamma-th", c.gamma_th, "Linear SNR threshold (default 1)");
        sub->add_option("--rate-th", c.rate_th, "Rate threshold in bit/s/Hz; gamma_th = 2^(2R) - 1");
        sub->add_option("--trials", c.trials, "Channel draws per scheme and N")->default_val(100000);
        sub->add_option("--event", event, "Outage event: s1 or either")->capture_default_str();
    }
    outage->add_option("--rho-db", c.rho_db, "Average SNR grid in dB")->default_val("0:2:30");
    outage->add_option("--schemes", schemes, "Any of proposed,selection,direct")->capture_default_str();
    gap->add_option("--rho-db", c.rho_db, "Average SNR grid in dB")->default_val("0:1:30");
    gap->add_option("--schemes", gap_schemes, "Schemes to compare")->capture_default_str();
    gap->add_option("--target-outage", target, "Outage level")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        std::string content;
        if (*wcdf) {
            content = cmd_wcdf(c, thresholds);
        } else if (*bound) {
            content = cmd_bound(c, methods);
        } else if (*outage) {
            content = cmd_outage(c, schemes, event);
        } else {
            content = cmd_gap(c, gap_schemes, event, target);
        }
        emit(c.out, content, out);
        return kOk;
    } catch (const IoError &e) {
        err << "twr: I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const ConvergenceError &e) {
        err << "twr: convergence error: " << e.what() << " (best estimate " << e.estimate() << ", error bound "
            << e.error_bound() << ")\n";
        return kConvergence;
    } catch (const OutOfRange &e) {
        err << "twr: out of range: " << e.what() << "\n";
        return kOutOfRange;
    } catch (const InsufficientData &e) {
        err << "twr: out of range: " << e.what() << "\n";
        return kOutOfRange;
    } catch (const Error &e) {
        err << "twr: usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        err << "twr: internal error: " << e.what() << "\n";
        return kInternal;
    }
}

} // namespace twr::cli
