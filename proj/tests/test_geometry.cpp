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
#include <numbers>

#include "cfmimo/geometry.hpp"

using namespace cfmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

NetworkLayout single_link(double ap_x, double ap_y, double ue_x, double ue_y,
                          double ap_height = 10.0, double ue_height = 1.5) {
    NetworkLayout layout;
    layout.ap_positions = arma::mat{{ap_x, ap_y}};
    layout.ue_positions = arma::mat{{ue_x, ue_y}};
    layout.ap_height = ap_height;
    layout.ue_height = ue_height;
    layout.area_side = 1000.0;
    return layout;
}

} // namespace

TEST_CASE("generate_layout rejects degenerate arguments") {
    Rng rng(1);
    CHECK_THROWS_AS(generate_layout(0, 1, 100.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 0, 100.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 1, 0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 1, -5.0, rng), std::invalid_argument);
    // heights: the omega formula divides by ap_height - ue_height
    CHECK_THROWS_AS(generate_layout(1, 1, 100.0, rng, 1.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(generate_layout(1, 1, 100.0, rng, 10.0, 0.0), std::invalid_argument);
}

TEST_CASE("generate_layout draws uniform positions inside the square") {
    Rng rng(7);
    const NetworkLayout layout = generate_layout(256, 64, 1000.0, rng);
    REQUIRE(layout.num_aps() == 256);
    REQUIRE(layout.num_ues() == 64);
    CHECK(layout.ap_positions.min() >= 0.0);
    CHECK(layout.ap_positions.max() <= 1000.0);
    CHECK(layout.ue_positions.min() >= 0.0);
    CHECK(layout.ue_positions.max() <= 1000.0);
}

TEST_CASE("generate_layout is reproducible for a fixed seed") {
    Rng rng_a(123), rng_b(123);
    const NetworkLayout a = generate_layout(32, 8, 500.0, rng_a);
    const NetworkLayout b = generate_layout(32, 8, 500.0, rng_b);
    REQUIRE(arma::approx_equal(a.ap_positions, b.ap_positions, "absdiff", 0.0));
    REQUIRE(arma::approx_equal(a.ue_positions, b.ue_positions, "absdiff", 0.0));
}

TEST_CASE("coordinate means concentrate at the square center") {
    constexpr std::size_t n = 10000;
    Rng rng(99);
    const double side = 1000.0;
    const NetworkLayout layout = generate_layout(n, 1, side, rng);
    // standard error of a uniform coordinate mean: side/sqrt(12 n)
    const double se = side / std::sqrt(12.0 * n);
    for (int axis = 0; axis < 2; ++axis) {
        const double mean = arma::mean(layout.ap_positions.col(axis));
        CHECK(std::abs(mean - side / 2.0) < 3.0 * se);
    }
}

TEST_CASE("horizontal_distance basics") {
    CHECK_THAT(horizontal_distance(single_link(0, 0, 3, 4), 0, 0), WithinRel(5.0, 1e-15));
    CHECK(horizontal_distance(single_link(2, 2, 2, 2), 0, 0) == 0.0);
    CHECK_THAT(horizontal_distance(single_link(10, 0, 0, 0), 0, 0), WithinRel(10.0, 1e-15));

    const NetworkLayout layout = single_link(0, 0, 3, 4);
    CHECK_THROWS_AS(horizontal_distance(layout, 1, 0), std::out_of_range);
    CHECK_THROWS_AS(horizontal_distance(layout, 0, 1), std::out_of_range);
}

TEST_CASE("link_distance_3d basics") {
    // vertical separation only
    CHECK_THAT(link_distance_3d(single_link(5, 5, 5, 5), 0, 0), WithinRel(8.5, 1e-15));
    // 6-8-10 triangle
    CHECK_THAT(link_distance_3d(single_link(0, 0, 6, 0, 9.0, 1.0), 0, 0),
               WithinRel(10.0, 1e-15));
}

TEST_CASE("squared 3-D distance decomposes into planar and height parts") {
    Rng rng(5);
    const NetworkLayout layout = generate_layout(20, 20, 800.0, rng);
    const double gap = layout.ap_height - layout.ue_height;
    for (std::size_t m = 0; m < layout.num_aps(); ++m)
        for (std::size_t k = 0; k < layout.num_ues(); ++k) {
            const double d = horizontal_distance(layout, m, k);
            const double x = link_distance_3d(layout, m, k);
            CHECK(x >= d);
            CHECK(x >= gap);
            CHECK_THAT(x * x, WithinRel(d * d + gap * gap, 1e-12));
        }
}

TEST_CASE("azimuth_angle follows the +x broadside convention") {
    CHECK(azimuth_angle(single_link(0, 0, 1, 0), 0, 0) == 0.0);
    CHECK_THAT(azimuth_angle(single_link(0, 0, 0, 1), 0, 0),
               WithinRel(std::numbers::pi / 2.0, 1e-15));
    CHECK_THAT(azimuth_angle(single_link(1, 0, 0, 0), 0, 0),
               WithinRel(std::numbers::pi, 1e-15));
    CHECK_THAT(azimuth_angle(single_link(0, 1, 0, 0), 0, 0),
               WithinRel(-std::numbers::pi / 2.0, 1e-15));
    // coincident planar positions resolve to 0 by convention
    CHECK(azimuth_angle(single_link(3, 3, 3, 3), 0, 0) == 0.0);
}

TEST_CASE("azimuth_angle stays in (-pi, pi]") {
    Rng rng(11);
    const NetworkLayout layout = generate_layout(30, 30, 100.0, rng);
    for (std::size_t m = 0; m < layout.num_aps(); ++m)
        for (std::size_t k = 0; k < layout.num_ues(); ++k) {
            const double theta = azimuth_angle(layout, m, k);
            CHECK(theta > -std::numbers::pi);
            CHECK(theta <= std::numbers::pi);
        }
}
