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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "cfmimo/beamforming.hpp"
#include "cfmimo/powerctl.hpp"

using namespace cfmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// Hand-built realization: per-UE LoS vectors and slow-fading gains are set
/// directly; H is irrelevant for channel inversion.
ChannelRealization manual_realization(const std::vector<std::vector<double>>& los_magnitudes,
                                      const arma::mat& nlos_gain) {
    const std::size_t num_aps = nlos_gain.n_rows;
    const std::size_t num_ues = nlos_gain.n_cols;
    const std::size_t antennas = los_magnitudes[0].size() / num_aps;
    ChannelRealization real;
    real.nlos_gain = nlos_gain;
    real.los_indicator.ones(num_aps, num_ues);
    real.los_component.set_size(antennas, num_aps, num_ues);
    for (std::size_t k = 0; k < num_ues; ++k)
        for (std::size_t m = 0; m < num_aps; ++m)
            for (std::size_t a = 0; a < antennas; ++a)
                real.los_component(a, m, k) = los_magnitudes[k][m * antennas + a];
    real.H.zeros(num_aps * antennas, num_ues);
    return real;
}

/// A desk-scale uplink fitness bound to one sampled realization.
struct RealizationFitness {
    arma::mat power_gain;
    arma::vec noise_var;
    FitnessFn fn;

    explicit RealizationFitness(std::uint64_t seed) {
        ChannelParams params;
        params.num_antennas = 4;
        Rng layout_rng(derive_seed(seed, "layout", 0));
        const NetworkLayout layout = generate_layout(32, 2, 1000.0, layout_rng);
        Rng channel_rng(derive_seed(seed, "channel", 0));
        const ChannelRealization real = sample_channel(layout, params, channel_rng);
        const EffectiveCoefficients coeffs = mmse_effective_coeffs(real.H, 1e-8);
        power_gain = coefficient_power(coeffs);
        noise_var = coeffs.noise_var;
        fn = [this](const PowerVector& zeta) {
            return min_rate_from_power_gains(power_gain, noise_var, zeta);
        };
    }
};

arma::mat scalar_mat(double value) {
    arma::mat m(1, 1);
    m(0, 0) = value;
    return m;
}

} // namespace

TEST_CASE("channel inversion inverts the aggregate mean channel power") {
    // single AP/UE: ||los||^2 = 3, beta = 1 -> raw coefficient 1/4
    const ChannelRealization real =
        manual_realization({{std::sqrt(3.0)}}, scalar_mat(1.0));
    CHECK_THAT(channel_inversion_raw(real)(0), WithinRel(0.25, 1e-15));
    // the rescaled vector tops out exactly at the cap
    CHECK(channel_inversion(real, 1.0)(0) == 1.0);
    CHECK(channel_inversion(real, 0.4)(0) == 0.4);
}

TEST_CASE("identical channel statistics get identical coefficients") {
    const ChannelRealization real = manual_realization(
        {{1.0, 2.0}, {1.0, 2.0}}, arma::mat{{0.5, 0.5}, {0.25, 0.25}});
    const PowerVector zeta = channel_inversion_raw(real);
    CHECK(zeta(0) == zeta(1));
}

TEST_CASE("a UE with a stronger aggregate channel receives less power") {
    // UE 0 close to both APs (large LoS magnitudes and slow-fading gains),
    // UE 1 far away
    const ChannelRealization real = manual_realization(
        {{2.0, 2.0}, {0.1, 0.1}}, arma::mat{{0.9, 0.01}, {0.9, 0.01}});
    const PowerVector zeta = channel_inversion(real, 1.0);
    CHECK(zeta(0) < zeta(1));
    CHECK(zeta(1) == 1.0);
}

TEST_CASE("channel inversion rejects degenerate inputs") {
    const ChannelRealization real =
        manual_realization({{0.0}}, scalar_mat(0.0));
    CHECK_THROWS_AS(channel_inversion_raw(real), NumericalError);
    const ChannelRealization ok = manual_realization({{1.0}}, scalar_mat(0.5));
    CHECK_THROWS_AS(channel_inversion(ok, 0.0), std::invalid_argument);
}

TEST_CASE("brute force finds the boundary optimum of a monotone objective") {
    const GridSearchResult result = max_min_brute_force(
        [](const PowerVector& z) { return z(0); }, 1, 11, 0.8);
    CHECK(result.zeta(0) == 0.8);
    CHECK_THAT(result.value, WithinRel(0.8, 1e-15));
    CHECK(result.evaluations == 11);
}

TEST_CASE("brute-force grid includes both endpoints") {
    std::vector<double> visited;
    max_min_brute_force(
        [&](const PowerVector& z) {
            visited.push_back(z(0));
            return 0.0;
        },
        1, 5, 1.0);
    REQUIRE(visited.size() == 5);
    CHECK(visited.front() == 0.0);
    CHECK(visited.back() == 1.0);
}

TEST_CASE("ties resolve to the smallest total power, then lexicographic order") {
    // every diagonal point maximizes -|z0 - z1|; the cheapest is (0, 0)
    const GridSearchResult result = max_min_brute_force(
        [](const PowerVector& z) { return -std::abs(z(0) - z(1)); }, 2, 9, 1.0);
    CHECK(result.value == 0.0);
    CHECK(result.zeta(0) == 0.0);
    CHECK(result.zeta(1) == 0.0);
    CHECK(result.evaluations == 81);
}

TEST_CASE("brute force matches a reverse-order re-enumeration on a random instance") {
    const RealizationFitness instance(4242);
    const std::size_t levels = 50;
    const GridSearchResult forward = max_min_brute_force(instance.fn, 2, levels, 1.0);
    CHECK(forward.evaluations == levels * levels);

    // independent exhaustive pass, iterating the lattice in reverse
    std::vector<double> grid(levels);
    for (std::size_t j = 0; j < levels; ++j)
        grid[j] = static_cast<double>(j) / static_cast<double>(levels - 1);
    double best_value = -std::numeric_limits<double>::infinity();
    double best_total = std::numeric_limits<double>::infinity();
    PowerVector best(2);
    for (std::size_t i = levels; i-- > 0;) {
        for (std::size_t j = levels; j-- > 0;) {
            const PowerVector zeta{grid[i], grid[j]};
            const double value = instance.fn(zeta);
            const double total = zeta(0) + zeta(1);
            const bool better =
                value > best_value ||
                (value == best_value &&
                 (total < best_total ||
                  (total == best_total &&
                   (zeta(0) < best(0) || (zeta(0) == best(0) && zeta(1) < best(1))))));
            if (better) {
                best_value = value;
                best_total = total;
                best = zeta;
            }
        }
    }
    CHECK(forward.value == best_value);
    CHECK(forward.zeta(0) == best(0));
    CHECK(forward.zeta(1) == best(1));
}

TEST_CASE("brute force rejects over-budget grids and bad arguments") {
    const FitnessFn zero = [](const PowerVector&) { return 0.0; };
    CHECK_THROWS_AS(max_min_brute_force(zero, 10, 10, 1.0), BudgetError);
    CHECK_THROWS_AS(max_min_brute_force(zero, 2, 1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(max_min_brute_force(zero, 0, 10, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(max_min_brute_force(zero, 2, 10, 0.0), std::invalid_argument);
    CHECK_NOTHROW(max_min_brute_force(zero, 3, 10, 1.0, 1000));
    CHECK_THROWS_AS(max_min_brute_force(zero, 3, 10, 1.0, 999), BudgetError);
}

TEST_CASE("the swarm lands on a quadratic bowl optimum across seeds") {
    const PowerVector target{0.3, 0.7};
    const FitnessFn bowl = [&](const PowerVector& z) {
        return -(arma::accu(arma::square(z - target)));
    };
    SwarmConfig cfg;
    cfg.particles = 50;
    cfg.iterations = 500;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const PsaResult result = psa_maximize(bowl, 2, cfg, rng);
        CHECK(arma::abs(result.zeta - target).max() <= 0.02);
    }
}

TEST_CASE("the swarm pushes a linear objective to the box boundary") {
    SwarmConfig cfg;
    cfg.particles = 50;
    cfg.iterations = 200;
    Rng rng(6);
    const PsaResult result =
        psa_maximize([](const PowerVector& z) { return z(0); }, 1, cfg, rng);
    CHECK_THAT(result.zeta(0), WithinAbs(1.0, 1e-3));
}

TEST_CASE("the swarm reaches at least 99% of the grid optimum on a sampled instance") {
    const RealizationFitness instance(77);
    const GridSearchResult grid = max_min_brute_force(instance.fn, 2, 100, 1.0);
    SwarmConfig cfg;
    cfg.particles = 20;
    cfg.iterations = 500;
    Rng rng(78);
    const PsaResult swarm = psa_maximize(instance.fn, 2, cfg, rng);
    CHECK(swarm.value >= 0.99 * grid.value);
}

TEST_CASE("swarm bookkeeping: history, feasibility, counters, determinism") {
    const RealizationFitness instance(901);
    SwarmConfig cfg;
    cfg.particles = 15;
    cfg.iterations = 120;

    Rng rng_a(55);
    const PsaResult a = psa_maximize(instance.fn, 2, cfg, rng_a);

    REQUIRE(a.gbest_history.size() == cfg.iterations + 1);
    for (std::size_t t = 1; t < a.gbest_history.size(); ++t)
        CHECK(a.gbest_history[t] >= a.gbest_history[t - 1]);
    CHECK(a.value == a.gbest_history.back());
    CHECK_NOTHROW(validate_power_vector(a.zeta, cfg.zeta_max));
    CHECK(a.fitness_evals == cfg.particles * (cfg.iterations + 1));
    CHECK(a.nan_evals == 0);

    Rng rng_b(55);
    const PsaResult b = psa_maximize(instance.fn, 2, cfg, rng_b);
    REQUIRE(b.zeta.n_elem == a.zeta.n_elem);
    CHECK(arma::approx_equal(a.zeta, b.zeta, "absdiff", 0.0));
    CHECK(a.value == b.value);
    CHECK(a.gbest_history == b.gbest_history);
}

TEST_CASE("NaN fitness values count as failures and never win") {
    const FitnessFn spiky = [](const PowerVector& z) {
        if (z(0) > 0.5)
            return std::numeric_limits<double>::quiet_NaN();
        return z(0);
    };
    SwarmConfig cfg;
    cfg.particles = 12;
    cfg.iterations = 60;
    Rng rng(8);
    const PsaResult result = psa_maximize(spiky, 1, cfg, rng);
    CHECK(result.nan_evals > 0);
    CHECK(std::isfinite(result.value));
    CHECK(result.zeta(0) <= 0.5);
}

TEST_CASE("a warm-started swarm never falls below the warm point") {
    const RealizationFitness instance(33);
    const PowerVector warm{0.4, 0.9};
    SwarmConfig cfg;
    cfg.particles = 10;
    cfg.iterations = 50;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        const PsaResult result = psa_maximize(instance.fn, 2, cfg, rng, &warm);
        CHECK(result.value >= instance.fn(warm));
    }
}

TEST_CASE("the velocity clamp bounds the per-iteration step") {
    const FitnessFn linear = [](const PowerVector& z) { return z(0) + z(1); };
    SwarmConfig cfg;
    cfg.particles = 8;
    cfg.iterations = 40;
    cfg.velocity_max = 0.05;
    Rng rng(9);
    const PsaResult result = psa_maximize(linear, 2, cfg, rng);
    CHECK_NOTHROW(validate_power_vector(result.zeta, cfg.zeta_max));
    CHECK(result.value > 1.0); // still makes progress toward the corner
}

TEST_CASE("swarm configuration validation") {
    const FitnessFn zero = [](const PowerVector&) { return 0.0; };
    SwarmConfig cfg;
    cfg.particles = 0;
    Rng rng(1);
    CHECK_THROWS_AS(psa_maximize(zero, 1, cfg, rng), std::invalid_argument);
    cfg.particles = 5;
    cfg.iterations = 0;
    CHECK_THROWS_AS(psa_maximize(zero, 1, cfg, rng), std::invalid_argument);
    cfg.iterations = 5;
    cfg.zeta_max = 0.0;
    CHECK_THROWS_AS(psa_maximize(zero, 1, cfg, rng), std::invalid_argument);
    cfg.zeta_max = 1.0;
    const PowerVector wrong_size{0.1, 0.2, 0.3};
    CHECK_THROWS_AS(psa_maximize(zero, 2, cfg, rng, &wrong_size), std::invalid_argument);
}
