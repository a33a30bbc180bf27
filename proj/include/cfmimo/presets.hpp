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
// Canned experiment setups. Every preset ships in two tiers with identical
// structure: "paper" at full scale (256 APs, 10^4 realizations, 10^4 swarm
// iterations; hours of compute) and "desk" scaled down for interactive runs
// and CI. Presets are expressed as configuration settings so they layer like
// any other configuration source.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cfmimo/errors.hpp"

namespace cfmimo {

enum class Tier { Desk, Paper };

inline Tier parse_tier(std::string_view text) {
    if (text == "desk")
        return Tier::Desk;
    if (text == "paper")
        return Tier::Paper;
    throw ConfigError("unknown tier '" + std::string(text) + "' (expected: desk, paper)");
}

inline const char* to_string(Tier tier) { return tier == Tier::Desk ? "desk" : "paper"; }

struct PresetInfo {
    std::string name;
    std::string alias; // empty when none
    std::string direction;
    std::string description;
};

inline const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog = {
        {"fig2", "", "uplink", "Jain index vs AP count, no power control vs channel inversion"},
        {"fig3", "", "downlink",
         "Jain index vs AP count, no power control vs channel inversion"},
        {"fig4", "", "uplink",
         "two-UE min-SINR CDF at 2 GHz, channel inversion vs max-min grid"},
        {"fig5", "", "downlink",
         "two-UE min-SINR CDF at 2 GHz, channel inversion vs max-min grid"},
        {"fig6", "two-ue-uplink", "uplink",
         "two-UE min-SINR CDF, channel inversion vs max-min grid vs particle swarm"},
        {"fig7", "two-ue-downlink", "downlink",
         "two-UE min-SINR CDF, channel inversion vs max-min grid vs particle swarm"},
        {"fig8", "", "uplink", "many-UE min-SINR CDF, channel inversion vs particle swarm"},
        {"fig9", "", "downlink", "many-UE min-SINR CDF, channel inversion vs particle swarm"},
        {"fig10", "", "uplink", "Jain index vs AP count, channel inversion vs particle swarm"},
        {"fig11", "", "downlink",
         "Jain index vs AP count, channel inversion vs particle swarm"},
    };
    return catalog;
}

/// Resolves aliases to the canonical preset name; empty string when unknown.
inline std::string canonical_preset_name(std::string_view name) {
    for (const PresetInfo& info : preset_catalog())
        if (info.name == name || (!info.alias.empty() && info.alias == name))
            return info.name;
    return std::string();
}

/// The configuration settings a preset pins, as section.key/value pairs in
/// the standard configuration schema.
inline std::vector<std::pair<std::string, std::string>> preset_settings(std::string_view name,
                                                                        Tier tier) {
    const std::string canonical = canonical_preset_name(name);
    if (canonical.empty())
        throw ConfigError("unknown preset '" + std::string(name) + "' (see list-presets)");
    const bool desk = tier == Tier::Desk;

    std::vector<std::pair<std::string, std::string>> settings;
    const auto set = [&settings](std::string key, std::string value) {
        settings.emplace_back(std::move(key), std::move(value));
    };

    // swarm scale shared by every preset that runs the swarm
    set("psa.particles", desk ? "20" : "50");
    set("psa.iterations", desk ? "500" : "10000");

    const bool sweep = canonical == "fig2" || canonical == "fig3" || canonical == "fig10" ||
                       canonical == "fig11";
    const bool two_ue = canonical == "fig4" || canonical == "fig5" || canonical == "fig6" ||
                        canonical == "fig7";

    if (sweep) {
        set("experiment.sweep_ap_counts", desk ? "8,16,32,64" : "16,32,64,128,256,512,1024");
        set("network.total_antennas", desk ? "128" : "1024");
        set("network.ues", desk ? "8" : "64");
        set("experiment.realizations", desk ? "100" : "10000");
    } else {
        set("network.aps", desk ? "32" : "256");
        set("network.antennas_per_ap", "4");
        set("network.ues", two_ue ? "2" : (desk ? "8" : "64"));
        set("experiment.realizations", desk ? "200" : "10000");
    }

    if (canonical == "fig4" || canonical == "fig5")
        set("channel.carrier_frequency_ghz", "2");

    if (canonical == "fig2" || canonical == "fig3")
        set("experiment.strategies", "none,inversion");
    else if (canonical == "fig4" || canonical == "fig5")
        set("experiment.strategies", "inversion,maxmin");
    else if (canonical == "fig6" || canonical == "fig7")
        set("experiment.strategies", "inversion,maxmin,psa");
    else
        set("experiment.strategies", "inversion,psa");

    if (two_ue)
        set("experiment.brute_force_levels", "100");

    const bool uplink = canonical == "fig2" || canonical == "fig4" || canonical == "fig6" ||
                        canonical == "fig8" || canonical == "fig10";
    set("experiment.directions", uplink ? "uplink" : "downlink");
    return settings;
}

} // namespace cfmimo
