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
// INI-style configuration: sections [network], [channel], [psa] and
// [experiment]; keys mirror the ExperimentConfig fields. Settings layer as
// section.key/value pairs, which lets configuration files, presets and
// command-line overrides flow through one dispatcher with a fixed precedence.
// All number formatting and parsing is locale-independent (std::to_chars /
// std::from_chars), so emitted files re-parse bit-exactly anywhere.

#pragma once

#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cfmimo/errors.hpp"
#include "cfmimo/simharness.hpp"

namespace cfmimo {

// ---------------------------------------------------------------- text io

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double value) {
    std::array<char, 64> buffer;
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), end);
}

inline double parse_double(std::string_view text, std::string_view key) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ConfigError(std::string(key) + ": '" + std::string(text) + "' is not a number");
    return value;
}

inline std::uint64_t parse_u64(std::string_view text, std::string_view key) {
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw ConfigError(std::string(key) + ": '" + std::string(text) +
                          "' is not an unsigned integer");
    return value;
}

inline bool parse_bool(std::string_view text, std::string_view key) {
    if (text == "true" || text == "1")
        return true;
    if (text == "false" || text == "0")
        return false;
    throw ConfigError(std::string(key) + ": '" + std::string(text) +
                      "' is not a boolean (true/false)");
}

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    return text;
}

inline std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos)
            comma = text.size();
        const std::string_view item = trim(text.substr(start, comma - start));
        if (!item.empty())
            items.emplace_back(item);
        start = comma + 1;
    }
    return items;
}

// ------------------------------------------------------------- enum names

inline const char* to_string(RatesMode mode) {
    return mode == RatesMode::Instantaneous ? "instantaneous" : "ensemble_interference";
}

inline const char* to_string(LayoutPolicy policy) {
    return policy == LayoutPolicy::RedrawnPerRealization ? "redrawn_per_realization"
                                                         : "fixed_per_run";
}

inline const char* to_string(BlockageDraws draws) {
    return draws == BlockageDraws::PerRealization ? "per_realization" : "per_deployment";
}

inline const char* to_string(NlosForm form) {
    return form == NlosForm::Clamped3d ? "clamped_3d" : "unclamped_2d";
}

inline Strategy parse_strategy(std::string_view text, std::string_view key) {
    if (text == "none")
        return Strategy::FullPower;
    if (text == "inversion")
        return Strategy::ChannelInversion;
    if (text == "maxmin")
        return Strategy::MaxMin;
    if (text == "psa")
        return Strategy::Psa;
    throw ConfigError(std::string(key) + ": unknown strategy '" + std::string(text) +
                      "' (expected: none, inversion, maxmin, psa)");
}

inline RatesMode parse_rates_mode(std::string_view text, std::string_view key) {
    if (text == "instantaneous")
        return RatesMode::Instantaneous;
    if (text == "ensemble_interference")
        return RatesMode::EnsembleInterference;
    throw ConfigError(std::string(key) + ": unknown rates mode '" + std::string(text) +
                      "' (expected: instantaneous, ensemble_interference)");
}

inline LayoutPolicy parse_layout_policy(std::string_view text, std::string_view key) {
    if (text == "redrawn_per_realization")
        return LayoutPolicy::RedrawnPerRealization;
    if (text == "fixed_per_run")
        return LayoutPolicy::FixedPerRun;
    throw ConfigError(std::string(key) + ": unknown layout policy '" + std::string(text) +
                      "' (expected: redrawn_per_realization, fixed_per_run)");
}

inline BlockageDraws parse_blockage_draws(std::string_view text, std::string_view key) {
    if (text == "per_realization")
        return BlockageDraws::PerRealization;
    if (text == "per_deployment")
        return BlockageDraws::PerDeployment;
    throw ConfigError(std::string(key) + ": unknown blockage draw policy '" +
                      std::string(text) + "' (expected: per_realization, per_deployment)");
}

inline NlosForm parse_nlos_form(std::string_view text, std::string_view key) {
    if (text == "clamped_3d")
        return NlosForm::Clamped3d;
    if (text == "unclamped_2d")
        return NlosForm::Unclamped2d;
    throw ConfigError(std::string(key) + ": unknown NLoS form '" + std::string(text) +
                      "' (expected: clamped_3d, unclamped_2d)");
}

inline std::vector<Direction> parse_directions(std::string_view text, std::string_view key) {
    if (text == "both")
        return {Direction::Uplink, Direction::Downlink};
    std::vector<Direction> directions;
    for (const std::string& item : split_list(text)) {
        if (item == "uplink")
            directions.push_back(Direction::Uplink);
        else if (item == "downlink")
            directions.push_back(Direction::Downlink);
        else
            throw ConfigError(std::string(key) + ": unknown direction '" + item +
                              "' (expected: uplink, downlink, both)");
    }
    if (directions.empty())
        throw ConfigError(std::string(key) + ": direction list is empty");
    return directions;
}

// ------------------------------------------------------------- dispatcher

/// Applies one "section.key" setting. Unknown keys are configuration errors;
/// value validation beyond syntax happens in resolve_config.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    const auto as_size = [&](std::string_view v) {
        return static_cast<std::size_t>(parse_u64(v, key));
    };

    if (key == "network.aps")
        cfg.num_aps = as_size(value);
    else if (key == "network.ues")
        cfg.num_ues = as_size(value);
    else if (key == "network.antennas_per_ap")
        cfg.channel.num_antennas = as_size(value);
    else if (key == "network.total_antennas")
        cfg.total_antennas = as_size(value);
    else if (key == "network.area_side_m")
        cfg.area_side = parse_double(value, key);
    else if (key == "network.ap_height_m")
        cfg.ap_height = parse_double(value, key);
    else if (key == "network.ue_height_m")
        cfg.ue_height = parse_double(value, key);
    else if (key == "channel.path_loss_exponent")
        cfg.channel.path_loss_exponent = parse_double(value, key);
    else if (key == "channel.built_up_fraction")
        cfg.channel.built_up_fraction = parse_double(value, key);
    else if (key == "channel.blockage_density_per_km2")
        cfg.blockage_density_per_km2 = parse_double(value, key);
    else if (key == "channel.blockage_altitude_m")
        cfg.channel.blockage_altitude = parse_double(value, key);
    else if (key == "channel.carrier_frequency_ghz")
        cfg.carrier_frequency_hz = parse_double(value, key) * 1e9;
    else if (key == "channel.reference_distance_m")
        cfg.channel.reference_distance = parse_double(value, key);
    else if (key == "channel.antenna_spacing_m")
        cfg.antenna_spacing = parse_double(value, key);
    else if (key == "channel.gain_ap")
        cfg.channel.gain_ap = parse_double(value, key);
    else if (key == "channel.gain_ue")
        cfg.channel.gain_ue = parse_double(value, key);
    else if (key == "channel.noise_power")
        cfg.noise_power = parse_double(value, key);
    else if (key == "channel.nlos_form")
        cfg.channel.nlos_form = parse_nlos_form(value, key);
    else if (key == "channel.blockage_draws")
        cfg.blockage_draws = parse_blockage_draws(value, key);
    else if (key == "psa.particles")
        cfg.swarm.particles = as_size(value);
    else if (key == "psa.iterations")
        cfg.swarm.iterations = as_size(value);
    else if (key == "psa.inertia")
        cfg.swarm.inertia = parse_double(value, key);
    else if (key == "psa.cognitive")
        cfg.swarm.cognitive = parse_double(value, key);
    else if (key == "psa.social")
        cfg.swarm.social = parse_double(value, key);
    else if (key == "psa.zeta_max")
        cfg.swarm.zeta_max = parse_double(value, key);
    else if (key == "psa.velocity_max") {
        // 0 switches the clamp off
        const double clamp = parse_double(value, key);
        cfg.swarm.velocity_max =
            clamp == 0.0 ? std::optional<double>() : std::optional<double>(clamp);
    } else if (key == "psa.warm_start")
        cfg.psa_warm_start = parse_bool(value, key);
    else if (key == "experiment.realizations")
        cfg.realizations = as_size(value);
    else if (key == "experiment.directions")
        cfg.directions = parse_directions(value, key);
    else if (key == "experiment.strategies") {
        cfg.strategies.clear();
        for (const std::string& item : split_list(value))
            cfg.strategies.push_back(parse_strategy(item, key));
        if (cfg.strategies.empty())
            throw ConfigError(std::string(key) + ": strategy list is empty");
    } else if (key == "experiment.rates_mode")
        cfg.rates_mode = parse_rates_mode(value, key);
    else if (key == "experiment.layout_policy")
        cfg.layout_policy = parse_layout_policy(value, key);
    else if (key == "experiment.brute_force_levels")
        cfg.brute_force_levels = as_size(value);
    else if (key == "experiment.brute_force_cap")
        cfg.brute_force_cap = parse_u64(value, key);
    else if (key == "experiment.master_seed")
        cfg.master_seed = parse_u64(value, key);
    else if (key == "experiment.threads")
        cfg.threads = static_cast<unsigned>(parse_u64(value, key));
    else if (key == "experiment.sweep_ap_counts") {
        cfg.sweep_ap_counts.clear();
        for (const std::string& item : split_list(value))
            cfg.sweep_ap_counts.push_back(as_size(item));
    } else
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

inline void apply_settings(ExperimentConfig& cfg,
                           const std::vector<std::pair<std::string, std::string>>& settings) {
    for (const auto& [key, value] : settings)
        apply_setting(cfg, key, value);
}

// -------------------------------------------------------------- INI read

/// Parses INI text into ordered section.key/value settings. Lines are
/// `key = value` under `[section]` headers; `#` and `;` start comments.
inline std::vector<std::pair<std::string, std::string>>
parse_ini(std::istream& input, std::string_view source_name) {
    std::vector<std::pair<std::string, std::string>> settings;
    std::string section;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        std::string_view view = trim(line);
        const std::size_t comment = view.find_first_of("#;");
        if (comment != std::string_view::npos)
            view = trim(view.substr(0, comment));
        if (view.empty())
            continue;
        const auto where = [&] {
            return std::string(source_name) + ":" + std::to_string(line_number);
        };
        if (view.front() == '[') {
            if (view.back() != ']' || view.size() < 3)
                throw ConfigError(where() + ": malformed section header '" +
                                  std::string(view) + "'");
            section = std::string(trim(view.substr(1, view.size() - 2)));
            continue;
        }
        const std::size_t equals = view.find('=');
        if (equals == std::string_view::npos)
            throw ConfigError(where() + ": expected 'key = value', got '" + std::string(view) +
                              "'");
        const std::string_view key = trim(view.substr(0, equals));
        const std::string_view value = trim(view.substr(equals + 1));
        if (key.empty())
            throw ConfigError(where() + ": empty key");
        if (section.empty())
            throw ConfigError(where() + ": key '" + std::string(key) +
                              "' appears before any [section]");
        settings.emplace_back(section + "." + std::string(key), std::string(value));
    }
    return settings;
}

inline std::vector<std::pair<std::string, std::string>>
load_config_settings(const std::filesystem::path& path) {
    std::ifstream input(path);
    if (!input)
        throw ConfigError("cannot open config file: " + path.string());
    return parse_ini(input, path.string());
}

inline ExperimentConfig config_from_file(const std::filesystem::path& path) {
    ExperimentConfig cfg;
    apply_settings(cfg, load_config_settings(path));
    return cfg;
}

// ------------------------------------------------------------- INI write

/// Writes the full configuration in the standard schema. Feeding the output
/// of a resolved configuration back in reproduces the experiment exactly.
inline void write_config_ini(std::ostream& out, const ExperimentConfig& cfg) {
    out << "[network]\n";
    out << "aps = " << cfg.num_aps << "\n";
    out << "ues = " << cfg.num_ues << "\n";
    out << "antennas_per_ap = " << cfg.channel.num_antennas << "\n";
    if (cfg.total_antennas)
        out << "total_antennas = " << *cfg.total_antennas << "\n";
    out << "area_side_m = " << format_double(cfg.area_side) << "\n";
    out << "ap_height_m = " << format_double(cfg.ap_height) << "\n";
    out << "ue_height_m = " << format_double(cfg.ue_height) << "\n";

    out << "\n[channel]\n";
    out << "path_loss_exponent = " << format_double(cfg.channel.path_loss_exponent) << "\n";
    out << "built_up_fraction = " << format_double(cfg.channel.built_up_fraction) << "\n";
    out << "blockage_density_per_km2 = " << format_double(cfg.blockage_density_per_km2)
        << "\n";
    out << "blockage_altitude_m = " << format_double(cfg.channel.blockage_altitude) << "\n";
    out << "carrier_frequency_ghz = " << format_double(cfg.carrier_frequency_hz / 1e9) << "\n";
    out << "reference_distance_m = " << format_double(cfg.channel.reference_distance) << "\n";
    if (cfg.antenna_spacing)
        out << "antenna_spacing_m = " << format_double(*cfg.antenna_spacing) << "\n";
    out << "gain_ap = " << format_double(cfg.channel.gain_ap) << "\n";
    out << "gain_ue = " << format_double(cfg.channel.gain_ue) << "\n";
    if (cfg.noise_power)
        out << "noise_power = " << format_double(*cfg.noise_power) << "\n";
    out << "nlos_form = " << to_string(cfg.channel.nlos_form) << "\n";
    out << "blockage_draws = " << to_string(cfg.blockage_draws) << "\n";

    out << "\n[psa]\n";
    out << "particles = " << cfg.swarm.particles << "\n";
    out << "iterations = " << cfg.swarm.iterations << "\n";
    out << "inertia = " << format_double(cfg.swarm.inertia) << "\n";
    out << "cognitive = " << format_double(cfg.swarm.cognitive) << "\n";
    out << "social = " << format_double(cfg.swarm.social) << "\n";
    out << "zeta_max = " << format_double(cfg.swarm.zeta_max) << "\n";
    if (cfg.swarm.velocity_max)
        out << "velocity_max = " << format_double(*cfg.swarm.velocity_max) << "\n";
    out << "warm_start = " << (cfg.psa_warm_start ? "true" : "false") << "\n";

    out << "\n[experiment]\n";
    out << "realizations = " << cfg.realizations << "\n";
    out << "directions = ";
    for (std::size_t i = 0; i < cfg.directions.size(); ++i)
        out << (i ? "," : "") << to_string(cfg.directions[i]);
    out << "\n";
    out << "strategies = ";
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i)
        out << (i ? "," : "") << to_string(cfg.strategies[i]);
    out << "\n";
    out << "rates_mode = " << to_string(cfg.rates_mode) << "\n";
    out << "layout_policy = " << to_string(cfg.layout_policy) << "\n";
    out << "brute_force_levels = " << cfg.brute_force_levels << "\n";
    out << "brute_force_cap = " << cfg.brute_force_cap << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    if (!cfg.sweep_ap_counts.empty()) {
        out << "sweep_ap_counts = ";
        for (std::size_t i = 0; i < cfg.sweep_ap_counts.size(); ++i)
            out << (i ? "," : "") << cfg.sweep_ap_counts[i];
        out << "\n";
    }
}

} // namespace cfmimo
