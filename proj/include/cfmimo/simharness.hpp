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
// Monte Carlo experiment harness. Every realization runs the pipeline
// layout -> channel -> effective coefficients -> power control -> rates,
// and the experiment aggregates minimum-SINR CDFs, fairness means and
// rate percentiles per strategy and direction.
//
// Reproducibility: every random stream is seeded as
// derive_seed(master_seed, label, realization_index) with labels "layout",
// "blockage", "fading", "psa-uplink" and "psa-downlink". Realizations are
// independent work units; aggregation is an ordered reduction over the
// realization index, so results are byte-identical for any worker count.

#pragma once

#include <armadillo>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cfmimo/beamforming.hpp"
#include "cfmimo/channel.hpp"
#include "cfmimo/errors.hpp"
#include "cfmimo/geometry.hpp"
#include "cfmimo/powerctl.hpp"
#include "cfmimo/rates.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

enum class Strategy { FullPower, ChannelInversion, MaxMin, Psa };
enum class RatesMode { Instantaneous, EnsembleInterference };
enum class LayoutPolicy { RedrawnPerRealization, FixedPerRun };
enum class BlockageDraws { PerRealization, PerDeployment };

inline const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::FullPower: return "none";
    case Strategy::ChannelInversion: return "inversion";
    case Strategy::MaxMin: return "maxmin";
    case Strategy::Psa: return "psa";
    }
    return "?";
}

inline const char* to_string(Direction d) {
    return d == Direction::Uplink ? "uplink" : "downlink";
}

/// Full description of one experiment. Carrier frequency and blockage
/// density are stored in their customary units and resolved into the nested
/// ChannelParams (wavelength, per-m^2 density) by resolve_config, which also
/// derives the noise floor and antenna spacing when left unset.
struct ExperimentConfig {
    // deployment
    std::size_t num_aps = 32;
    std::size_t num_ues = 8;
    double area_side = 1000.0; // m
    double ap_height = 10.0;   // m
    double ue_height = 1.5;    // m
    std::optional<std::size_t> total_antennas; // fixed antenna budget: N = total/M

    // channel (eta, alpha, gamma, d0, N, gains, nlos form live in `channel`)
    double carrier_frequency_hz = 3.5e9;
    double blockage_density_per_km2 = 300.0;
    std::optional<double> antenna_spacing; // m; unset -> half wavelength
    std::optional<double> noise_power;     // unset -> derived at resolve time
    ChannelParams channel;

    // experiment
    std::size_t realizations = 200;
    std::vector<Direction> directions{Direction::Uplink};
    std::vector<Strategy> strategies{Strategy::ChannelInversion, Strategy::Psa};
    RatesMode rates_mode = RatesMode::Instantaneous;
    LayoutPolicy layout_policy = LayoutPolicy::RedrawnPerRealization;
    BlockageDraws blockage_draws = BlockageDraws::PerRealization;
    std::uint64_t master_seed = 1;
    unsigned threads = 1; // 0 -> hardware concurrency
    std::vector<std::size_t> sweep_ap_counts; // nonempty -> AP-count sweep

    // power control
    SwarmConfig swarm{.particles = 20, .iterations = 500};
    bool psa_warm_start = true;
    std::size_t brute_force_levels = 100;
    std::uint64_t brute_force_cap = 100000000ULL;
};

/// Deterministic noise-floor calibration: N0 equals the 95th percentile of
/// the aggregate NLoS path gain collected over the network's whole antenna
/// field. A UE whose every path is blocked then clears 0 dB receive SNR at
/// full power in only one position out of twenty, i.e. blocked UEs are
/// essentially noise-limited while LoS UEs sit tens of dB above the floor.
/// That pins the LoS-capture operating point power control is meant to fix;
/// a lower floor saturates every UE and makes power control irrelevant.
///
/// The reference cloud treats the antenna budget as M*N single-antenna
/// points, making the value invariant to how antennas are grouped into APs
/// and therefore constant across a fixed-budget AP-count sweep. A fixed
/// internal seed keeps the calibration independent of the master seed.
inline double derive_noise_power(const ExperimentConfig& cfg) {
    constexpr std::uint64_t kCalibrationSeed = 0x0dB00537C411B8ULL;
    constexpr std::size_t kDeployments = 2001;
    const std::size_t field_size = cfg.total_antennas
                                       ? *cfg.total_antennas
                                       : cfg.num_aps * cfg.channel.num_antennas;
    const double height_gap = cfg.ap_height - cfg.ue_height;

    Rng rng(kCalibrationSeed);
    std::vector<double> aggregate(kDeployments);
    for (std::size_t trial = 0; trial < kDeployments; ++trial) {
        const double ux = uniform(rng, 0.0, cfg.area_side);
        const double uy = uniform(rng, 0.0, cfg.area_side);
        double sum = 0.0;
        for (std::size_t j = 0; j < field_size; ++j) {
            const double ax = uniform(rng, 0.0, cfg.area_side);
            const double ay = uniform(rng, 0.0, cfg.area_side);
            const double planar = std::hypot(ax - ux, ay - uy);
            sum += cfg.channel.nlos_form == NlosForm::Clamped3d
                       ? nlos_pathloss(std::hypot(planar, height_gap), cfg.channel)
                       : nlos_pathloss_unclamped(std::max(planar, 1e-9), cfg.channel);
        }
        aggregate[trial] = sum;
    }
    const std::size_t rank = (kDeployments - 1) * 95 / 100;
    std::nth_element(aggregate.begin(), aggregate.begin() + rank, aggregate.end());
    return aggregate[rank];
}

/// Returns a copy with every derived quantity pinned: antennas per AP from a
/// total-antenna budget, wavelength from the carrier, per-m^2 blockage
/// density, half-wavelength spacing and the derived noise floor unless given
/// explicitly. Validates the combination.
inline ExperimentConfig resolve_config(ExperimentConfig cfg) {
    if (cfg.realizations < 1)
        throw ConfigError("experiment: realizations must be at least 1");
    if (cfg.strategies.empty())
        throw ConfigError("experiment: strategy list must be nonempty");
    if (cfg.directions.empty())
        throw ConfigError("experiment: direction list must be nonempty");
    if (cfg.num_aps < 1 || cfg.num_ues < 1)
        throw ConfigError("network: need at least one AP and one UE");
    if (!(cfg.area_side > 0.0))
        throw ConfigError("network: area_side_m must be positive");
    if (!(cfg.ue_height > 0.0) || !(cfg.ap_height > cfg.ue_height))
        throw ConfigError("network: heights must satisfy ap_height > ue_height > 0");
    if (!(cfg.carrier_frequency_hz > 0.0))
        throw ConfigError("channel: carrier frequency must be positive");
    if (!(cfg.blockage_density_per_km2 >= 0.0))
        throw ConfigError("channel: blockage density must be nonnegative");

    if (cfg.total_antennas) {
        if (*cfg.total_antennas == 0 || *cfg.total_antennas % cfg.num_aps != 0)
            throw ConfigError("network: aps (" + std::to_string(cfg.num_aps) +
                              ") must divide total_antennas (" +
                              std::to_string(*cfg.total_antennas) + ")");
        cfg.channel.num_antennas = *cfg.total_antennas / cfg.num_aps;
    }
    cfg.channel.wavelength = kSpeedOfLight / cfg.carrier_frequency_hz;
    cfg.channel.blockage_density = cfg.blockage_density_per_km2 * 1e-6;
    if (!cfg.antenna_spacing)
        cfg.antenna_spacing = 0.5 * cfg.channel.wavelength;
    cfg.channel.antenna_spacing = *cfg.antenna_spacing;
    if (!cfg.noise_power)
        cfg.noise_power = derive_noise_power(cfg);
    cfg.channel.noise_power = *cfg.noise_power;

    if (cfg.blockage_draws == BlockageDraws::PerDeployment &&
        cfg.layout_policy == LayoutPolicy::RedrawnPerRealization)
        throw ConfigError("experiment: per-deployment blockage draws require layout_policy = "
                          "fixed_per_run");

    try {
        validate(cfg.channel);
        validate(cfg.swarm);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const bool uses_grid = std::find(cfg.strategies.begin(), cfg.strategies.end(),
                                     Strategy::MaxMin) != cfg.strategies.end();
    if (uses_grid) {
        if (cfg.brute_force_levels < 2)
            throw ConfigError("experiment: brute_force_levels must be at least 2");
        std::uint64_t points = 1;
        for (std::size_t k = 0; k < cfg.num_ues; ++k) {
            if (points > cfg.brute_force_cap / cfg.brute_force_levels)
                throw ConfigError("experiment: brute-force grid " +
                                  std::to_string(cfg.brute_force_levels) + "^" +
                                  std::to_string(cfg.num_ues) + " exceeds the budget of " +
                                  std::to_string(cfg.brute_force_cap) + " evaluations");
            points *= cfg.brute_force_levels;
        }
    }
    return cfg;
}

struct StrategyOutcome {
    Strategy strategy = Strategy::FullPower;
    Direction direction = Direction::Uplink;
    PowerVector zeta;
    RateReport rates;
    double min_sinr = 0.0;
    std::uint64_t fitness_evals = 0;
};

struct RealizationOutput {
    std::size_t index = 0;
    std::optional<EffectiveCoefficients> uplink_coeffs;
    std::optional<EffectiveCoefficients> downlink_coeffs;
    /// Outcomes ordered direction-major: for each configured direction, one
    /// entry per configured strategy.
    std::vector<StrategyOutcome> outcomes;
};

namespace detail {

inline const char* psa_stream_label(Direction d) {
    return d == Direction::Uplink ? "psa-uplink" : "psa-downlink";
}

inline NetworkLayout layout_for(const ExperimentConfig& cfg, std::size_t index) {
    const std::uint64_t stream_index =
        cfg.layout_policy == LayoutPolicy::FixedPerRun ? 0 : index;
    Rng rng(derive_seed(cfg.master_seed, "layout", stream_index));
    return generate_layout(cfg.num_aps, cfg.num_ues, cfg.area_side, rng, cfg.ap_height,
                           cfg.ue_height);
}

inline ChannelRealization channel_for(const ExperimentConfig& cfg, std::size_t index) {
    const NetworkLayout layout = layout_for(cfg, index);
    const std::uint64_t blockage_index =
        cfg.blockage_draws == BlockageDraws::PerDeployment ? 0 : index;
    Rng blockage_rng(derive_seed(cfg.master_seed, "blockage", blockage_index));
    Rng fading_rng(derive_seed(cfg.master_seed, "fading", index));
    return sample_channel(layout, cfg.channel, blockage_rng, fading_rng);
}

/// The rate basis of one direction: squared-magnitude gains plus noise.
/// Instantaneous mode squares this realization's coefficients; ensemble mode
/// swaps the off-diagonal powers for batch averages.
struct DirectionContext {
    Direction direction = Direction::Uplink;
    arma::mat power_gain;
    arma::vec noise_var;
};

inline std::vector<StrategyOutcome> evaluate_strategies(
    const ExperimentConfig& cfg, std::size_t index,
    const std::vector<DirectionContext>& contexts, const PowerVector& inversion_raw) {
    const double zeta_max = cfg.swarm.zeta_max;
    PowerVector inversion_zeta = inversion_raw * (zeta_max / inversion_raw.max());

    std::vector<StrategyOutcome> outcomes;
    outcomes.reserve(contexts.size() * cfg.strategies.size());
    for (const DirectionContext& ctx : contexts) {
        const FitnessFn fitness = [&ctx](const PowerVector& zeta) {
            return min_rate_from_power_gains(ctx.power_gain, ctx.noise_var, zeta);
        };
        for (const Strategy strategy : cfg.strategies) {
            StrategyOutcome outcome;
            outcome.strategy = strategy;
            outcome.direction = ctx.direction;
            switch (strategy) {
            case Strategy::FullPower:
                outcome.zeta = PowerVector(cfg.num_ues, arma::fill::value(zeta_max));
                break;
            case Strategy::ChannelInversion:
                outcome.zeta = inversion_zeta;
                break;
            case Strategy::MaxMin: {
                GridSearchResult grid =
                    max_min_brute_force(fitness, cfg.num_ues, cfg.brute_force_levels,
                                        zeta_max, cfg.brute_force_cap);
                outcome.zeta = std::move(grid.zeta);
                outcome.fitness_evals = grid.evaluations;
                break;
            }
            case Strategy::Psa: {
                Rng rng(derive_seed(cfg.master_seed, psa_stream_label(ctx.direction), index));
                PsaResult psa =
                    psa_maximize(fitness, cfg.num_ues, cfg.swarm, rng,
                                 cfg.psa_warm_start ? &inversion_zeta : nullptr);
                outcome.zeta = std::move(psa.zeta);
                outcome.fitness_evals = psa.fitness_evals;
                break;
            }
            }
            outcome.rates =
                rate_report_from_power_gains(ctx.power_gain, ctx.noise_var, outcome.zeta);
            outcome.min_sinr = outcome.rates.per_ue_sinr.min();
            outcomes.push_back(std::move(outcome));
        }
    }
    return outcomes;
}

inline RealizationOutput run_realization_resolved(const ExperimentConfig& cfg,
                                                  std::size_t index) {
    const ChannelRealization real = channel_for(cfg, index);
    const PowerVector inversion_raw = channel_inversion_raw(real);

    RealizationOutput output;
    output.index = index;
    std::vector<DirectionContext> contexts;
    contexts.reserve(cfg.directions.size());
    for (const Direction direction : cfg.directions) {
        EffectiveCoefficients coeffs =
            direction == Direction::Uplink
                ? mmse_effective_coeffs(real.H, cfg.channel.noise_power)
                : rzf_effective_coeffs(real.H, cfg.channel.noise_power);
        contexts.push_back({direction, coefficient_power(coeffs), coeffs.noise_var});
        (direction == Direction::Uplink ? output.uplink_coeffs : output.downlink_coeffs) =
            std::move(coeffs);
    }
    output.outcomes = evaluate_strategies(cfg, index, contexts, inversion_raw);
    return output;
}

/// Runs fn(i) for i in [0, count) on the configured number of workers and
/// records any exception message per index. Slot writes are disjoint, so no
/// synchronization beyond the shared counter is needed.
template <typename Fn>
inline void parallel_indexed(unsigned threads, std::size_t count,
                             std::vector<std::string>& errors, Fn&& fn) {
    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    errors.assign(count, std::string());

    const auto body = [&](std::size_t i) {
        try {
            fn(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        } catch (...) {
            errors[i] = "unknown error";
        }
    };

    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                body(i);
        });
    for (std::thread& t : pool)
        t.join();
}

} // namespace detail

/// Runs the full per-realization pipeline for one index under the
/// instantaneous rate basis. Coefficients are computed once per direction and
/// shared by every strategy.
inline RealizationOutput run_realization(const ExperimentConfig& config, std::size_t index) {
    return detail::run_realization_resolved(resolve_config(config), index);
}

struct StrategyDirection {
    Strategy strategy = Strategy::FullPower;
    Direction direction = Direction::Uplink;
    auto operator<=>(const StrategyDirection&) const = default;
};

struct Aggregate {
    std::vector<double> min_sinr_sorted; // linear, ascending
    std::vector<double> min_rate_sorted; // bits/s/Hz, ascending
    double mean_jain = 0.0;
    arma::vec mean_per_ue_rate;
    std::uint64_t fitness_evals = 0;
};

/// Linear-interpolated empirical quantile of an ascending sample vector,
/// percent in [0, 100].
inline double percentile_sorted(const std::vector<double>& sorted_samples, double percent) {
    if (sorted_samples.empty())
        throw std::invalid_argument("percentile_sorted: empty sample");
    if (sorted_samples.size() == 1)
        return sorted_samples.front();
    const double pos = percent / 100.0 * static_cast<double>(sorted_samples.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(
        std::clamp(std::floor(pos), 0.0, static_cast<double>(sorted_samples.size() - 2)));
    const double frac = pos - static_cast<double>(lo);
    return sorted_samples[lo] + frac * (sorted_samples[lo + 1] - sorted_samples[lo]);
}

struct ExperimentRecord {
    std::size_t realization = 0;
    StrategyOutcome outcome;
};

struct ExperimentResult {
    ExperimentConfig resolved;
    bool noise_was_derived = false;
    std::vector<ExperimentRecord> records; // realization-major, then direction, then strategy
    std::map<StrategyDirection, Aggregate> aggregates;
    std::size_t failed_realizations = 0;
    std::vector<std::string> failure_messages;
    double wall_seconds = 0.0;
};

namespace detail {

/// Per-realization quantities kept around for the ensemble-interference mode.
struct RealizationEssentials {
    std::vector<DirectionContext> contexts;
    PowerVector inversion_raw;
};

inline void aggregate_records(ExperimentResult& result) {
    const std::size_t num_ues = result.resolved.num_ues;
    for (const ExperimentRecord& record : result.records) {
        Aggregate& agg =
            result.aggregates[{record.outcome.strategy, record.outcome.direction}];
        if (agg.mean_per_ue_rate.n_elem == 0)
            agg.mean_per_ue_rate.zeros(num_ues);
        agg.min_sinr_sorted.push_back(record.outcome.min_sinr);
        agg.min_rate_sorted.push_back(record.outcome.rates.min_rate);
        agg.mean_jain += record.outcome.rates.jain;
        agg.mean_per_ue_rate += record.outcome.rates.per_ue_rate;
        agg.fitness_evals += record.outcome.fitness_evals;
    }
    for (auto& [key, agg] : result.aggregates) {
        const double n = static_cast<double>(agg.min_sinr_sorted.size());
        agg.mean_jain /= n;
        agg.mean_per_ue_rate /= n;
        std::sort(agg.min_sinr_sorted.begin(), agg.min_sinr_sorted.end());
        std::sort(agg.min_rate_sorted.begin(), agg.min_rate_sorted.end());
    }
}

inline void collect_failures(ExperimentResult& result,
                             const std::vector<std::string>& errors) {
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            ++result.failed_realizations;
            result.failure_messages.push_back("realization " + std::to_string(i) + ": " +
                                              errors[i]);
        }
    }
    if (result.failed_realizations * 100 > errors.size())
        throw NumericalError("more than 1% of realizations failed (" +
                             std::to_string(result.failed_realizations) + " of " +
                             std::to_string(errors.size()) + "); first: " +
                             result.failure_messages.front());
}

} // namespace detail

/// Executes the experiment: R realizations (parallel across `threads`
/// workers), then an ordered aggregation. Per-realization failures are
/// reported in the result; the run fails outright when more than 1% error.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.resolved = resolve_config(config);
    result.noise_was_derived = !config.noise_power.has_value();
    const ExperimentConfig& cfg = result.resolved;
    const std::size_t count = cfg.realizations;
    std::vector<std::string> errors;

    if (cfg.rates_mode == RatesMode::Instantaneous) {
        std::vector<std::vector<StrategyOutcome>> outcomes(count);
        detail::parallel_indexed(cfg.threads, count, errors, [&](std::size_t i) {
            outcomes[i] = detail::run_realization_resolved(cfg, i).outcomes;
        });
        detail::collect_failures(result, errors);
        for (std::size_t i = 0; i < count; ++i)
            for (StrategyOutcome& outcome : outcomes[i])
                result.records.push_back({i, std::move(outcome)});
    } else {
        // Phase 1: coefficients for every realization.
        std::vector<detail::RealizationEssentials> essentials(count);
        detail::parallel_indexed(cfg.threads, count, errors, [&](std::size_t i) {
            const ChannelRealization real = detail::channel_for(cfg, i);
            essentials[i].inversion_raw = channel_inversion_raw(real);
            for (const Direction direction : cfg.directions) {
                EffectiveCoefficients coeffs =
                    direction == Direction::Uplink
                        ? mmse_effective_coeffs(real.H, cfg.channel.noise_power)
                        : rzf_effective_coeffs(real.H, cfg.channel.noise_power);
                essentials[i].contexts.push_back(
                    {direction, coefficient_power(coeffs), coeffs.noise_var});
            }
        });
        detail::collect_failures(result, errors);

        // Batch-mean interference powers per direction (ordered reduction).
        std::vector<arma::mat> mean_gain(cfg.directions.size());
        std::size_t successes = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (!errors[i].empty())
                continue;
            ++successes;
            for (std::size_t d = 0; d < cfg.directions.size(); ++d) {
                if (mean_gain[d].n_elem == 0)
                    mean_gain[d].zeros(cfg.num_ues, cfg.num_ues);
                mean_gain[d] += essentials[i].contexts[d].power_gain;
            }
        }
        for (arma::mat& gain : mean_gain)
            gain /= static_cast<double>(successes);

        // Phase 2: strategies against averaged interference, own desired gain
        // and noise.
        std::vector<std::vector<StrategyOutcome>> outcomes(count);
        std::vector<std::string> phase2_errors;
        detail::parallel_indexed(cfg.threads, count, phase2_errors, [&](std::size_t i) {
            if (!errors[i].empty())
                return;
            std::vector<detail::DirectionContext> mixed;
            mixed.reserve(cfg.directions.size());
            for (std::size_t d = 0; d < cfg.directions.size(); ++d) {
                detail::DirectionContext ctx = essentials[i].contexts[d];
                arma::mat gain = mean_gain[d];
                gain.diag() = ctx.power_gain.diag();
                ctx.power_gain = std::move(gain);
                mixed.push_back(std::move(ctx));
            }
            outcomes[i] = detail::evaluate_strategies(cfg, i, mixed, essentials[i].inversion_raw);
        });
        for (std::size_t i = 0; i < count; ++i)
            if (errors[i].empty() && !phase2_errors[i].empty())
                throw NumericalError("ensemble phase 2 failed at realization " +
                                     std::to_string(i) + ": " + phase2_errors[i]);
        for (std::size_t i = 0; i < count; ++i)
            for (StrategyOutcome& outcome : outcomes[i])
                result.records.push_back({i, std::move(outcome)});
    }

    detail::aggregate_records(result);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

struct SweepPoint {
    std::size_t num_aps = 0;
    std::size_t antennas_per_ap = 0;
    std::map<StrategyDirection, double> mean_jain;
    ExperimentResult result;
};

/// Runs one experiment per AP count with the antenna budget held fixed
/// (N = total_antennas / M) and reports the mean Jain index per strategy and
/// direction at every point.
inline std::vector<SweepPoint> sweep_ap_count(const ExperimentConfig& base,
                                              const std::vector<std::size_t>& ap_counts) {
    if (ap_counts.empty())
        throw ConfigError("sweep: AP count list must be nonempty");
    if (!base.total_antennas)
        throw ConfigError("sweep: total_antennas must be set for an AP-count sweep");

    std::vector<SweepPoint> points;
    points.reserve(ap_counts.size());
    for (const std::size_t num_aps : ap_counts) {
        ExperimentConfig cfg = base;
        cfg.num_aps = num_aps;
        cfg.sweep_ap_counts.clear();
        SweepPoint point;
        point.result = run_experiment(cfg);
        point.num_aps = num_aps;
        point.antennas_per_ap = point.result.resolved.channel.num_antennas;
        for (const auto& [key, agg] : point.result.aggregates)
            point.mean_jain[key] = agg.mean_jain;
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace cfmimo
