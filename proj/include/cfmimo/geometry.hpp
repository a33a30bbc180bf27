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

#pragma once

#include <armadillo>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cfmimo/rng.hpp"

namespace cfmimo {

/// Planar AP/UE deployment on a square service area. Heights are uniform per
/// role and the AP height must exceed the UE height (several model terms
/// divide by the gap). Immutable once built; safe to share across threads.
struct NetworkLayout {
    arma::mat ap_positions; // num_aps x 2, meters
    arma::mat ue_positions; // num_ues x 2, meters
    double ap_height = 10.0;   // m
    double ue_height = 1.5;    // m
    double area_side = 1000.0; // m

    std::size_t num_aps() const { return ap_positions.n_rows; }
    std::size_t num_ues() const { return ue_positions.n_rows; }
};

inline void validate(const NetworkLayout& layout) {
    if (layout.num_aps() < 1 || layout.num_ues() < 1)
        throw std::invalid_argument("layout: need at least one AP and one UE");
    if (layout.ap_positions.n_cols != 2 || layout.ue_positions.n_cols != 2)
        throw std::invalid_argument("layout: positions must be n x 2 planar coordinates");
    if (!(layout.area_side > 0.0))
        throw std::invalid_argument("layout: area_side must be positive");
    if (!(layout.ue_height > 0.0) || !(layout.ap_height > layout.ue_height))
        throw std::invalid_argument("layout: heights must satisfy ap_height > ue_height > 0");
    const auto in_area = [&](const arma::mat& p) {
        return p.min() >= 0.0 && p.max() <= layout.area_side;
    };
    if (!in_area(layout.ap_positions) || !in_area(layout.ue_positions))
        throw std::invalid_argument("layout: positions must lie in [0, area_side]^2");
}

/// Draws AP and UE positions i.i.d. uniform over the square. Draw order is
/// fixed (AP x/y pairs first, then UE x/y pairs) so a seed pins the layout.
inline NetworkLayout generate_layout(std::size_t num_aps, std::size_t num_ues, double area_side,
                                     Rng& rng, double ap_height = 10.0, double ue_height = 1.5) {
    if (num_aps < 1 || num_ues < 1)
        throw std::invalid_argument("generate_layout: node counts must be at least 1");
    if (!(area_side > 0.0))
        throw std::invalid_argument("generate_layout: area_side must be positive");

    NetworkLayout layout;
    layout.ap_height = ap_height;
    layout.ue_height = ue_height;
    layout.area_side = area_side;
    layout.ap_positions.set_size(num_aps, 2);
    layout.ue_positions.set_size(num_ues, 2);
    for (std::size_t m = 0; m < num_aps; ++m) {
        layout.ap_positions(m, 0) = uniform(rng, 0.0, area_side);
        layout.ap_positions(m, 1) = uniform(rng, 0.0, area_side);
    }
    for (std::size_t k = 0; k < num_ues; ++k) {
        layout.ue_positions(k, 0) = uniform(rng, 0.0, area_side);
        layout.ue_positions(k, 1) = uniform(rng, 0.0, area_side);
    }
    validate(layout);
    return layout;
}

namespace detail {

inline void check_link_indices(const NetworkLayout& layout, std::size_t m, std::size_t k) {
    if (m >= layout.num_aps())
        throw std::out_of_range("AP index " + std::to_string(m) + " out of range");
    if (k >= layout.num_ues())
        throw std::out_of_range("UE index " + std::to_string(k) + " out of range");
}

} // namespace detail

/// Planar (2-D) distance between AP m and UE k.
inline double horizontal_distance(const NetworkLayout& layout, std::size_t m, std::size_t k) {
    detail::check_link_indices(layout, m, k);
    const double dx = layout.ue_positions(k, 0) - layout.ap_positions(m, 0);
    const double dy = layout.ue_positions(k, 1) - layout.ap_positions(m, 1);
    return std::hypot(dx, dy);
}

/// 3-D link distance sqrt(d^2 + (ap_height - ue_height)^2); never smaller
/// than the height gap.
inline double link_distance_3d(const NetworkLayout& layout, std::size_t m, std::size_t k) {
    return std::hypot(horizontal_distance(layout, m, k), layout.ap_height - layout.ue_height);
}

/// Bearing from AP m to UE k in (-pi, pi], measured from the +x axis (every
/// array broadside faces +x). Coincident planar positions map to 0, which
/// keeps the downstream steering vector well defined.
inline double azimuth_angle(const NetworkLayout& layout, std::size_t m, std::size_t k) {
    detail::check_link_indices(layout, m, k);
    const double dx = layout.ue_positions(k, 0) - layout.ap_positions(m, 0);
    const double dy = layout.ue_positions(k, 1) - layout.ap_positions(m, 1);
    if (dx == 0.0 && dy == 0.0)
        return 0.0;
    const double theta = std::atan2(dy, dx);
    return theta == -std::numbers::pi ? std::numbers::pi : theta;
}

} // namespace cfmimo
