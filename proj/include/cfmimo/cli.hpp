// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: cell-free massive MIMO simulation and power-control library
// Copyright (C) 2026 cfmimo project contributors
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
//
// Command-line front end. Configuration sources layer with the precedence
// overrides > preset > config file > built-in defaults; everything funnels
// through the section.key dispatcher so the precedence is uniform. The
// output bundle written per run:
//   records.csv          one row per (realization, strategy, direction, UE)
//   cdf.csv              min-SINR CDF table (sweeps: mean-Jain-vs-M table)
//   metadata.txt         versions, derived values, timings, summary stats
//   resolved_config.ini  feeds back through --config for a bit-exact re-run
// Sweep runs additionally write records_m<M>.csv per sweep point.

#pragma once

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfmimo/config.hpp"
#include "cfmimo/output.hpp"
#include "cfmimo/presets.hpp"
#include "cfmimo/simharness.hpp"
#include "cfmimo/version.hpp"

namespace cfmimo {

namespace detail {

inline void print_run_summary(std::ostream& out, const ExperimentResult& result,
                              const std::string& point_prefix = "") {
    for (const Direction direction : result.resolved.directions) {
        for (const Strategy strategy : result.resolved.strategies) {
            const auto it = result.aggregates.find({strategy, direction});
            if (it == result.aggregates.end())
                continue;
            out << "summary " << point_prefix << "direction=" << to_string(direction)
                << " strategy=" << to_string(strategy) << " p10_min_rate_bpshz="
                << format_double(percentile_sorted(it->second.min_rate_sorted, 10.0))
                << " mean_jain=" << format_double(it->second.mean_jain) << "\n";
        }
    }
}

inline int run_command(const std::string& config_path, const std::string& preset,
                       const std::string& tier_name, const std::vector<std::string>& overrides,
                       bool seed_given, std::uint64_t seed, bool threads_given,
                       unsigned threads, const std::string& out_dir, std::ostream& out,
                       std::ostream& err) {
    try {
        ExperimentConfig cfg;
        if (!config_path.empty())
            apply_settings(cfg, load_config_settings(config_path));
        if (!preset.empty())
            apply_settings(cfg, preset_settings(preset, parse_tier(tier_name)));
        for (const std::string& item : overrides) {
            const std::size_t equals = item.find('=');
            if (equals == std::string::npos)
                throw ConfigError("override '" + item + "' must look like section.key=value");
            apply_setting(cfg, trim(std::string_view(item).substr(0, equals)),
                          trim(std::string_view(item).substr(equals + 1)));
        }
        if (seed_given)
            cfg.master_seed = seed;
        if (threads_given)
            cfg.threads = threads;

        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);

        if (cfg.sweep_ap_counts.empty()) {
            const ExperimentResult result = run_experiment(cfg);
            write_file(dir / "records.csv",
                       [&](std::ostream& os) { write_records_csv(os, result); });
            write_file(dir / "cdf.csv", [&](std::ostream& os) { write_cdf_csv(os, result); });
            write_file(dir / "metadata.txt",
                       [&](std::ostream& os) { write_metadata(os, result); });
            write_file(dir / "resolved_config.ini",
                       [&](std::ostream& os) { write_config_ini(os, result.resolved); });
            print_run_summary(out, result);
        } else {
            const auto start = std::chrono::steady_clock::now();
            const std::vector<SweepPoint> points = sweep_ap_count(cfg, cfg.sweep_ap_counts);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                    .count();
            write_file(dir / "cdf.csv", [&](std::ostream& os) { write_sweep_csv(os, points); });
            for (const SweepPoint& point : points)
                write_file(dir / ("records_m" + std::to_string(point.num_aps) + ".csv"),
                           [&](std::ostream& os) { write_records_csv(os, point.result); });
            write_file(dir / "metadata.txt",
                       [&](std::ostream& os) { write_sweep_metadata(os, points, wall); });
            // echo of the sweep configuration resolved at the first point,
            // with the sweep list restored
            ExperimentConfig echo = points.front().result.resolved;
            echo.num_aps = cfg.num_aps;
            echo.total_antennas = cfg.total_antennas;
            echo.channel.num_antennas = cfg.channel.num_antennas;
            echo.sweep_ap_counts = cfg.sweep_ap_counts;
            write_file(dir / "resolved_config.ini",
                       [&](std::ostream& os) { write_config_ini(os, echo); });
            for (const SweepPoint& point : points)
                print_run_summary(out, point.result,
                                  "m=" + std::to_string(point.num_aps) + " ");
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int list_presets_command(std::ostream& out) {
    for (const PresetInfo& info : preset_catalog()) {
        out << info.name;
        if (!info.alias.empty())
            out << " (alias: " << info.alias << ")";
        out << "  direction=" << info.direction << "  " << info.description << "\n";
    }
    out << "tiers: desk, paper\n";
    return 0;
}

} // namespace detail

/// Entry point shared by the binary and the test suite.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"cell-free massive MIMO uplink/downlink simulator with LoS/NLoS channels "
                 "and power control"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path, preset, tier = "desk", out_dir = "out";
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    CLI::App* run = app.add_subcommand("run", "run an experiment and write the output bundle");
    run->add_option("--config", config_path, "configuration file (INI)");
    run->add_option("--preset", preset, "preset name (see list-presets)");
    run->add_option("--tier", tier, "preset scale")
        ->check(CLI::IsMember({"desk", "paper"}));
    auto* seed_opt = run->add_option("--seed", seed, "master seed");
    auto* threads_opt = run->add_option("--threads", threads, "worker threads (0 = all cores)");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--override", overrides, "section.key=value, repeatable; highest precedence");

    CLI::App* list = app.add_subcommand("list-presets", "list preset experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    if (list->parsed())
        return detail::list_presets_command(out);
    return detail::run_command(config_path, preset, tier, overrides, seed_opt->count() > 0,
                               seed, threads_opt->count() > 0, threads, out_dir, out, err);
}

} // namespace cfmimo
