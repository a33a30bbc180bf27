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
// Minimal library walkthrough: one two-UE realization, uplink coefficients,
// and the three power-control strategies side by side.

#include <cstdio>

#include "cfmimo/simharness.hpp"

int main() {
    using namespace cfmimo;

    ExperimentConfig cfg;
    cfg.num_aps = 32;
    cfg.num_ues = 2;
    cfg.channel.num_antennas = 4;
    cfg.strategies = {Strategy::ChannelInversion, Strategy::MaxMin, Strategy::Psa};
    cfg.master_seed = 42;

    const RealizationOutput output = run_realization(cfg, 0);
    std::printf("%-10s %12s %12s %10s\n", "strategy", "min_sinr_db", "min_rate", "jain");
    for (const StrategyOutcome& o : output.outcomes) {
        std::printf("%-10s %12.3f %12.4f %10.4f\n", to_string(o.strategy),
                    10.0 * std::log10(o.min_sinr), o.rates.min_rate, o.rates.jain);
    }
    return 0;
}
