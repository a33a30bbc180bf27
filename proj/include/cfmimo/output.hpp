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
// Serialization of experiment results: per-UE records and min-SINR CDF
// tables as CSV (plot-ready, locale-independent, units in the column names)
// plus a structured-text metadata document. Apart from the wall-clock timing
// in the metadata, every emitted byte is a deterministic function of the
// resolved configuration.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/simharness.hpp"
#include "cfmimo/version.hpp"

namespace cfmimo {

inline double to_db(double linear) { return 10.0 * std::log10(linear); }

/// Per-UE records, one row per (realization, strategy, direction, UE).
inline void write_records_csv(std::ostream& out, const ExperimentResult& result) {
    out << "realization,strategy,direction,ue,rate_bpshz,sinr_db,zeta\n";
    for (const ExperimentRecord& record : result.records) {
        const StrategyOutcome& o = record.outcome;
        for (std::size_t ue = 0; ue < o.zeta.n_elem; ++ue) {
            out << record.realization << ',' << to_string(o.strategy) << ','
                << to_string(o.direction) << ',' << ue << ','
                << format_double(o.rates.per_ue_rate(ue)) << ','
                << format_double(to_db(o.rates.per_ue_sinr(ue))) << ','
                << format_double(o.zeta(ue)) << "\n";
        }
    }
}

/// Empirical CDF of the per-realization minimum SINR, one block per
/// (direction, strategy) in configuration order.
inline void write_cdf_csv(std::ostream& out, const ExperimentResult& result) {
    out << "strategy,direction,value_db,cdf\n";
    for (const Direction direction : result.resolved.directions) {
        for (const Strategy strategy : result.resolved.strategies) {
            const auto it = result.aggregates.find({strategy, direction});
            if (it == result.aggregates.end())
                continue;
            const std::vector<double>& samples = it->second.min_sinr_sorted;
            const double n = static_cast<double>(samples.size());
            for (std::size_t i = 0; i < samples.size(); ++i) {
                out << to_string(strategy) << ',' << to_string(direction) << ','
                    << format_double(to_db(samples[i])) << ','
                    << format_double(static_cast<double>(i + 1) / n) << "\n";
            }
        }
    }
}

/// Sweep table: mean Jain index per (AP count, strategy, direction).
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
    out << "m_aps,strategy,direction,mean_jain\n";
    for (const SweepPoint& point : points) {
        for (const Direction direction : point.result.resolved.directions) {
            for (const Strategy strategy : point.result.resolved.strategies) {
                const auto it = point.mean_jain.find({strategy, direction});
                if (it == point.mean_jain.end())
                    continue;
                out << point.num_aps << ',' << to_string(strategy) << ','
                    << to_string(direction) << ',' << format_double(it->second) << "\n";
            }
        }
    }
}

namespace detail {

inline void write_summary_section(std::ostream& out, const ExperimentResult& result,
                                  const std::string& prefix) {
    static constexpr double kPercentiles[] = {1, 5, 10, 25, 50, 75, 90, 95, 99};
    for (const Direction direction : result.resolved.directions) {
        for (const Strategy strategy : result.resolved.strategies) {
            const auto it = result.aggregates.find({strategy, direction});
            if (it == result.aggregates.end())
                continue;
            const std::string tag =
                prefix + std::string(to_string(direction)) + "." + to_string(strategy);
            out << tag << ".mean_jain = " << format_double(it->second.mean_jain) << "\n";
            out << tag << ".fitness_evals = " << it->second.fitness_evals << "\n";
            for (const double p : kPercentiles)
                out << tag << ".p" << static_cast<int>(p) << "_min_rate_bpshz = "
                    << format_double(percentile_sorted(it->second.min_rate_sorted, p)) << "\n";
        }
    }
}

} // namespace detail

/// Structured-text metadata: tool and dependency versions, derived
/// quantities, failure report, timing and the summary statistics. The
/// resolved configuration itself ships as a separate re-runnable INI file.
inline void write_metadata(std::ostream& out, const ExperimentResult& result) {
    out << "[run]\n";
    out << "tool_version = " << kVersion << "\n";
    out << "armadillo_version = " << ARMA_VERSION_MAJOR << "." << ARMA_VERSION_MINOR << "."
        << ARMA_VERSION_PATCH << "\n";
    out << "threads = " << result.resolved.threads << "\n";
    out << "wall_seconds = " << format_double(result.wall_seconds) << "\n";
    out << "failed_realizations = " << result.failed_realizations << "\n";
    for (const std::string& message : result.failure_messages)
        out << "failure = " << message << "\n";

    out << "\n[derived]\n";
    out << "noise_power_w = " << format_double(result.resolved.channel.noise_power) << "\n";
    out << "noise_power_was_derived = " << (result.noise_was_derived ? "true" : "false")
        << "\n";
    out << "antennas_per_ap = " << result.resolved.channel.num_antennas << "\n";
    out << "wavelength_m = " << format_double(result.resolved.channel.wavelength) << "\n";
    out << "antenna_spacing_m = " << format_double(result.resolved.channel.antenna_spacing)
        << "\n";
    out << "master_seed = " << result.resolved.master_seed << "\n";

    out << "\n[summary]\n";
    detail::write_summary_section(out, result, "");
}

inline void write_sweep_metadata(std::ostream& out, const std::vector<SweepPoint>& points,
                                 double wall_seconds) {
    out << "[run]\n";
    out << "tool_version = " << kVersion << "\n";
    out << "armadillo_version = " << ARMA_VERSION_MAJOR << "." << ARMA_VERSION_MINOR << "."
        << ARMA_VERSION_PATCH << "\n";
    out << "wall_seconds = " << format_double(wall_seconds) << "\n";
    out << "sweep_points = " << points.size() << "\n";
    for (const SweepPoint& point : points) {
        out << "\n[point.m" << point.num_aps << "]\n";
        out << "aps = " << point.num_aps << "\n";
        out << "antennas_per_ap = " << point.antennas_per_ap << "\n";
        out << "noise_power_w = "
            << format_double(point.result.resolved.channel.noise_power) << "\n";
        out << "failed_realizations = " << point.result.failed_realizations << "\n";
        detail::write_summary_section(out, point.result, "");
    }
}

/// Writes `content` through a temporary stream; throws on any I/O failure so
/// partial bundles never pass silently.
template <typename Fn>
inline void write_file(const std::filesystem::path& path, Fn&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    writer(out);
    out.flush();
    if (!out)
        throw std::runtime_error("error while writing file: " + path.string());
}

} // namespace cfmimo
