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
// Three power-control strategies behind one shape of interface: given a
// fitness function over the box [0, zeta_max]^K, produce a power vector.
//
//   channel_inversion    closed-form inverse mean-channel-power heuristic
//   max_min_brute_force  exhaustive lattice search, the max-min oracle
//   psa_maximize         particle swarm ascent, the scalable optimizer

#pragma once

#include <armadillo>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfmimo/channel.hpp"
#include "cfmimo/errors.hpp"
#include "cfmimo/rates.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

using FitnessFn = std::function<double(const PowerVector&)>;

/// Inverse overall mean-squared channel power, before any rescale:
/// zeta_k = 1 / (sum_m ||los_component_mk||^2 + sum_m nlos_gain_mk).
/// UEs with strong aggregate statistics end up with small coefficients.
/// The same expression serves uplink and downlink.
inline PowerVector channel_inversion_raw(const ChannelRealization& real) {
    const std::size_t num_aps = real.los_indicator.n_rows;
    const std::size_t num_ues = real.los_indicator.n_cols;
    PowerVector zeta(num_ues);
    for (std::size_t k = 0; k < num_ues; ++k) {
        double mean_power = 0.0;
        for (std::size_t m = 0; m < num_aps; ++m) {
            const arma::cx_vec los = real.los_component.slice(k).col(m);
            mean_power += std::real(arma::cdot(los, los)) + real.nlos_gain(m, k);
        }
        if (!(mean_power > 0.0))
            throw NumericalError("channel_inversion: UE " + std::to_string(k) +
                                 " has zero mean channel power");
        zeta(k) = 1.0 / mean_power;
    }
    return zeta;
}

/// Channel-inversion coefficients rescaled so the largest entry sits exactly
/// at the power cap; the inversion ratios are preserved.
inline PowerVector channel_inversion(const ChannelRealization& real, double zeta_max = 1.0) {
    if (!(zeta_max > 0.0))
        throw std::invalid_argument("channel_inversion: zeta_max must be positive");
    PowerVector zeta = channel_inversion_raw(real);
    return zeta * (zeta_max / zeta.max());
}

struct GridSearchResult {
    PowerVector zeta;
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t evaluations = 0;
};

/// Exhaustive maximization over the lattice of `levels` uniform power levels
/// per UE spanning [0, zeta_max], endpoints included. Ties resolve to the
/// smaller total power, then to the lexicographically smaller point, so the
/// winner does not depend on enumeration order. Errors out up front when
/// levels^K would exceed the evaluation budget.
inline GridSearchResult max_min_brute_force(const FitnessFn& fitness, std::size_t num_ues,
                                            std::size_t levels, double zeta_max,
                                            std::uint64_t budget_cap = 100000000ULL) {
    if (num_ues < 1)
        throw std::invalid_argument("max_min_brute_force: need at least one UE");
    if (levels < 2)
        throw std::invalid_argument("max_min_brute_force: need at least two power levels");
    if (!(zeta_max > 0.0))
        throw std::invalid_argument("max_min_brute_force: zeta_max must be positive");

    std::uint64_t grid_points = 1;
    for (std::size_t k = 0; k < num_ues; ++k) {
        if (grid_points > budget_cap / levels)
            throw BudgetError("max_min_brute_force: " + std::to_string(levels) + "^" +
                              std::to_string(num_ues) + " grid points exceed the budget of " +
                              std::to_string(budget_cap) + " evaluations");
        grid_points *= levels;
    }

    std::vector<double> level_value(levels);
    for (std::size_t j = 0; j < levels; ++j)
        level_value[j] = zeta_max * static_cast<double>(j) / static_cast<double>(levels - 1);

    std::vector<std::size_t> index(num_ues, 0);
    std::vector<std::size_t> best_index(num_ues, 0);
    PowerVector zeta(num_ues, arma::fill::zeros);

    GridSearchResult best;
    double best_total = std::numeric_limits<double>::infinity();
    bool have_best = false;

    const auto lex_less = [](const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i])
                return a[i] < b[i];
        return false;
    };

    for (std::uint64_t step = 0; step < grid_points; ++step) {
        const double value = fitness(zeta);
        ++best.evaluations;
        const double total = arma::accu(zeta);
        const bool better =
            !have_best || value > best.value ||
            (value == best.value &&
             (total < best_total || (total == best_total && lex_less(index, best_index))));
        if (better) {
            best.zeta = zeta;
            best.value = value;
            best_total = total;
            best_index = index;
            have_best = true;
        }
        // odometer increment, last coordinate fastest
        for (std::size_t pos = num_ues; pos-- > 0;) {
            if (++index[pos] < levels) {
                zeta(pos) = level_value[index[pos]];
                break;
            }
            index[pos] = 0;
            zeta(pos) = level_value[0];
        }
    }
    return best;
}

/// Swarm hyperparameters. Defaults follow the standard heavy-inertia setup
/// (50 particles, w = 1, c1 = c2 = 2, 10000 iterations); the optional
/// velocity clamp is off by default since the box projection already contains
/// the positions.
struct SwarmConfig {
    std::size_t particles = 50;
    std::size_t iterations = 10000;
    double inertia = 1.0;
    double cognitive = 2.0;
    double social = 2.0;
    double zeta_max = 1.0;
    std::optional<double> velocity_max;
};

inline void validate(const SwarmConfig& cfg) {
    if (cfg.particles < 1)
        throw std::invalid_argument("swarm: need at least one particle");
    if (cfg.iterations < 1)
        throw std::invalid_argument("swarm: need at least one iteration");
    if (!(cfg.inertia >= 0.0) || !(cfg.cognitive >= 0.0) || !(cfg.social >= 0.0))
        throw std::invalid_argument("swarm: inertia/cognitive/social must be nonnegative");
    if (!(cfg.zeta_max > 0.0))
        throw std::invalid_argument("swarm: zeta_max must be positive");
    if (cfg.velocity_max && !(*cfg.velocity_max > 0.0))
        throw std::invalid_argument("swarm: velocity_max must be positive when set");
}

struct PsaResult {
    PowerVector zeta;
    double value = -std::numeric_limits<double>::infinity();
    std::uint64_t fitness_evals = 0;
    std::uint64_t nan_evals = 0;
    /// Best value after initialization and after each iteration; length
    /// iterations + 1 and nondecreasing.
    std::vector<double> gbest_history;
};

/// Particle swarm ascent over the box [0, zeta_max]^K.
///
/// Per particle and iteration the velocity update reads
///   v <- w v + c1 r1 .* (pbest - x) + c2 r2 .* (gbest - x)
/// with fresh per-coordinate uniforms r1, r2, then x <- x + v projected onto
/// the box; a clamped coordinate has its velocity component zeroed. Personal
/// and global bests advance on strict improvement only, and the global best
/// updates inside the particle loop, so later particles in the same iteration
/// already steer toward it. The incumbent starts at -infinity, which keeps
/// sign-indefinite fitness functions usable; a NaN fitness value is treated
/// as -infinity and counted in nan_evals.
///
/// Draw order (reproducibility contract): per particle at initialization,
/// K position coordinates then K velocity coordinates, all scaled uniforms;
/// per particle and iteration, the K coordinates of r1 then the K of r2.
/// When warm_start is given, particle 0 takes that position (projected onto
/// the box) without consuming position draws; its velocity is drawn as usual.
inline PsaResult psa_maximize(const FitnessFn& fitness, std::size_t num_ues,
                              const SwarmConfig& cfg, Rng& rng,
                              const PowerVector* warm_start = nullptr) {
    if (num_ues < 1)
        throw std::invalid_argument("psa_maximize: need at least one UE");
    validate(cfg);
    if (warm_start && warm_start->n_elem != num_ues)
        throw std::invalid_argument("psa_maximize: warm-start dimension mismatch");

    PsaResult result;
    const auto evaluate = [&](const PowerVector& x) {
        ++result.fitness_evals;
        const double value = fitness(x);
        if (std::isnan(value)) {
            ++result.nan_evals;
            return -std::numeric_limits<double>::infinity();
        }
        return value;
    };

    const std::size_t num_particles = cfg.particles;
    std::vector<PowerVector> position(num_particles), velocity(num_particles),
        pbest(num_particles);
    std::vector<double> pbest_value(num_particles);

    PowerVector gbest(num_ues, arma::fill::zeros);
    double gbest_value = -std::numeric_limits<double>::infinity();

    for (std::size_t p = 0; p < num_particles; ++p) {
        position[p].set_size(num_ues);
        velocity[p].set_size(num_ues);
        if (p == 0 && warm_start) {
            position[p] = arma::clamp(*warm_start, 0.0, cfg.zeta_max);
        } else {
            for (std::size_t j = 0; j < num_ues; ++j)
                position[p](j) = cfg.zeta_max * uniform01(rng);
        }
        for (std::size_t j = 0; j < num_ues; ++j)
            velocity[p](j) = cfg.zeta_max * uniform01(rng);

        const double value = evaluate(position[p]);
        pbest[p] = position[p];
        pbest_value[p] = value;
        if (value > gbest_value) {
            gbest_value = value;
            gbest = position[p];
        }
    }
    result.gbest_history.push_back(gbest_value);

    for (std::size_t t = 0; t < cfg.iterations; ++t) {
        for (std::size_t p = 0; p < num_particles; ++p) {
            for (std::size_t j = 0; j < num_ues; ++j) {
                const double r1 = uniform01(rng);
                velocity[p](j) = cfg.inertia * velocity[p](j) +
                                 cfg.cognitive * r1 * (pbest[p](j) - position[p](j));
            }
            for (std::size_t j = 0; j < num_ues; ++j) {
                const double r2 = uniform01(rng);
                velocity[p](j) += cfg.social * r2 * (gbest(j) - position[p](j));
            }
            if (cfg.velocity_max)
                velocity[p] = arma::clamp(velocity[p], -*cfg.velocity_max, *cfg.velocity_max);

            for (std::size_t j = 0; j < num_ues; ++j) {
                double x = position[p](j) + velocity[p](j);
                if (x < 0.0) {
                    x = 0.0;
                    velocity[p](j) = 0.0;
                } else if (x > cfg.zeta_max) {
                    x = cfg.zeta_max;
                    velocity[p](j) = 0.0;
                }
                position[p](j) = x;
            }

            const double value = evaluate(position[p]);
            if (value > pbest_value[p]) {
                pbest_value[p] = value;
                pbest[p] = position[p];
            }
            if (pbest_value[p] > gbest_value) {
                gbest_value = pbest_value[p];
                gbest = pbest[p];
            }
        }
        result.gbest_history.push_back(gbest_value);
    }

    result.zeta = std::move(gbest);
    result.value = gbest_value;
    return result;
}

} // namespace cfmimo
