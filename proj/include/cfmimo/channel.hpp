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
// Probabilistic LoS/NLoS channel model. Each AP-UE link is the superposition
// of a Bernoulli-gated deterministic LoS component (ULA steering vector with
// free-space amplitude and carrier phase) and a Rayleigh NLoS component with
// a power-law slow-fading gain. LoS presence follows the ITU blockage model:
// the probability of a clear path decays with the horizontal distance through
// the built-up fraction, the blockage density and the blockage height profile.

#pragma once

#include <armadillo>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "cfmimo/geometry.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

/// Which slow-fading path-loss form drives the NLoS component.
enum class NlosForm {
    Clamped3d,   ///< min(1, (x/d0)^-eta) on the 3-D link distance (default)
    Unclamped2d, ///< (d/d0)^-eta on the horizontal distance, no short-range clamp
};

/// Physical constants of the channel model. Defaults: 3.5 GHz carrier,
/// half-wavelength ULA spacing, 0 dBi antennas, normalized unit noise.
struct ChannelParams {
    double path_loss_exponent = 3.0;            // unitless
    double built_up_fraction = 0.5;             // in [0, 1]
    double blockage_density = 300.0e-6;         // blockages per m^2
    double blockage_altitude = 20.0;            // mean blockage height, m
    double wavelength = kSpeedOfLight / 3.5e9;  // m
    double reference_distance = 1.0;            // m
    std::size_t num_antennas = 4;               // per AP
    double antenna_spacing = 0.5 * kSpeedOfLight / 3.5e9; // m
    double gain_ap = 1.0;                       // linear
    double gain_ue = 1.0;                       // linear
    double noise_power = 1.0;                   // normalized watts
    NlosForm nlos_form = NlosForm::Clamped3d;
};

inline void validate(const ChannelParams& p) {
    if (!(p.path_loss_exponent > 0.0))
        throw std::invalid_argument("channel: path_loss_exponent must be positive");
    if (!(p.built_up_fraction >= 0.0 && p.built_up_fraction <= 1.0))
        throw std::invalid_argument("channel: built_up_fraction must lie in [0, 1]");
    if (!(p.blockage_density >= 0.0))
        throw std::invalid_argument("channel: blockage_density must be nonnegative");
    if (!(p.blockage_altitude > 0.0))
        throw std::invalid_argument("channel: blockage_altitude must be positive");
    if (!(p.wavelength > 0.0))
        throw std::invalid_argument("channel: wavelength must be positive");
    if (!(p.reference_distance > 0.0))
        throw std::invalid_argument("channel: reference_distance must be positive");
    if (p.num_antennas < 1)
        throw std::invalid_argument("channel: num_antennas must be at least 1");
    if (!(p.antenna_spacing > 0.0))
        throw std::invalid_argument("channel: antenna_spacing must be positive");
    if (!(p.gain_ap > 0.0) || !(p.gain_ue > 0.0))
        throw std::invalid_argument("channel: antenna gains must be positive");
    if (!(p.noise_power > 0.0))
        throw std::invalid_argument("channel: noise_power must be positive");
}

/// Shadowing ratio of the ITU blockage model, built from the error function
/// evaluated at the endpoint heights. Lies in (0, 1) for physically sensible
/// blockage statistics.
inline double itu_omega(const ChannelParams& p, double ap_height, double ue_height) {
    if (!(ap_height > ue_height))
        throw std::invalid_argument("itu_omega: ap_height must exceed ue_height");
    const double g = p.blockage_altitude;
    const double scale = g * std::numbers::sqrt2;
    return std::sqrt(std::numbers::pi / 2.0) * (g / (ap_height - ue_height)) *
           (std::erf(ap_height / scale) - std::erf(ue_height / scale));
}

/// LoS probability over a horizontal distance: (1 - omega)^sqrt(alpha mu d).
/// Equals 1 at d = 0 and decays monotonically when alpha mu > 0.
inline double los_probability(double horizontal_dist, const ChannelParams& p, double ap_height,
                              double ue_height) {
    if (!(horizontal_dist >= 0.0))
        throw std::invalid_argument("los_probability: distance must be nonnegative");
    const double omega = itu_omega(p, ap_height, ue_height);
    const double exponent =
        std::sqrt(p.built_up_fraction * p.blockage_density * horizontal_dist);
    return std::pow(1.0 - omega, exponent);
}

/// ULA response vector: entry n is exp(i 2 pi n (spacing/wavelength) sin
/// theta). Unit modulus everywhere, entry 0 is exactly 1.
inline arma::cx_vec array_response(double azimuth, const ChannelParams& p) {
    arma::cx_vec response(p.num_antennas);
    const double phase_step =
        2.0 * std::numbers::pi * (p.antenna_spacing / p.wavelength) * std::sin(azimuth);
    for (std::size_t n = 0; n < p.num_antennas; ++n)
        response(n) = std::polar(1.0, phase_step * static_cast<double>(n));
    return response;
}

/// Deterministic LoS component for the (m, k) link: steering vector scaled by
/// the free-space amplitude sqrt(G_ap G_ue) h_ue h_ap / (4 pi x) and rotated
/// by the carrier phase of the 3-D link distance.
inline arma::cx_vec los_gain(std::size_t m, std::size_t k, const NetworkLayout& layout,
                             const ChannelParams& p) {
    const double x = link_distance_3d(layout, m, k);
    const double amplitude = std::sqrt(p.gain_ap * p.gain_ue) * layout.ue_height *
                             layout.ap_height / (4.0 * std::numbers::pi * x);
    const std::complex<double> scale =
        std::polar(amplitude, 2.0 * std::numbers::pi * x / p.wavelength);
    return array_response(azimuth_angle(layout, m, k), p) * scale;
}

/// Clamped NLoS slow-fading gain min(1, (x/d0)^-eta); equals 1 inside the
/// reference distance.
inline double nlos_pathloss(double distance, const ChannelParams& p) {
    if (!(distance > 0.0))
        throw std::invalid_argument("nlos_pathloss: distance must be positive");
    return std::min(1.0, std::pow(distance / p.reference_distance, -p.path_loss_exponent));
}

/// Unclamped power-law variant used by NlosForm::Unclamped2d. Exceeds 1
/// inside the reference distance.
inline double nlos_pathloss_unclamped(double distance, const ChannelParams& p) {
    if (!(distance > 0.0))
        throw std::invalid_argument("nlos_pathloss_unclamped: distance must be positive");
    return std::pow(distance / p.reference_distance, -p.path_loss_exponent);
}

/// One sampled channel state. H stacks one block of num_antennas rows per AP;
/// column k is the full network-side channel of UE k. The per-link blockage
/// states, NLoS gains and LoS components are retained so power-control
/// heuristics and tests can reconstruct every column.
struct ChannelRealization {
    arma::cx_mat H;            // (M*N) x K
    arma::umat los_indicator;  // M x K, entries 0/1
    arma::mat nlos_gain;       // M x K slow-fading gains
    arma::cx_cube los_component; // N x M x K; slice k, column m = LoS vector of link (m,k)
    NetworkLayout layout;

    std::size_t num_ues() const { return H.n_cols; }
};

/// Samples a channel realization. Blockage states come from blockage_rng and
/// fading from fading_rng so the two processes can live on independent seed
/// streams; passing the same generator twice collapses them into one stream.
///
/// Draw order is part of the reproducibility contract:
///   pass 1, links in m-major order: one uniform per link for the LoS gate;
///   pass 2, (m, k, antenna) order:  one complex Gaussian per matrix entry.
inline ChannelRealization sample_channel(const NetworkLayout& layout, const ChannelParams& p,
                                         Rng& blockage_rng, Rng& fading_rng) {
    validate(p);
    validate(layout);
    const std::size_t num_aps = layout.num_aps();
    const std::size_t num_ues = layout.num_ues();
    const std::size_t n = p.num_antennas;

    ChannelRealization real;
    real.layout = layout;
    real.H.set_size(num_aps * n, num_ues);
    real.los_indicator.set_size(num_aps, num_ues);
    real.nlos_gain.set_size(num_aps, num_ues);
    real.los_component.set_size(n, num_aps, num_ues);

    const double omega = itu_omega(p, layout.ap_height, layout.ue_height);

    for (std::size_t m = 0; m < num_aps; ++m) {
        for (std::size_t k = 0; k < num_ues; ++k) {
            const double d2 = horizontal_distance(layout, m, k);
            const double p_los = std::pow(
                1.0 - omega, std::sqrt(p.built_up_fraction * p.blockage_density * d2));
            real.los_indicator(m, k) = uniform01(blockage_rng) < p_los ? 1u : 0u;
            real.nlos_gain(m, k) = p.nlos_form == NlosForm::Clamped3d
                                       ? nlos_pathloss(link_distance_3d(layout, m, k), p)
                                       : nlos_pathloss_unclamped(d2, p);
            real.los_component.slice(k).col(m) = los_gain(m, k, layout, p);
        }
    }

    for (std::size_t m = 0; m < num_aps; ++m) {
        for (std::size_t k = 0; k < num_ues; ++k) {
            const double los_on = real.los_indicator(m, k) ? 1.0 : 0.0;
            const double sqrt_beta = std::sqrt(real.nlos_gain(m, k));
            for (std::size_t a = 0; a < n; ++a) {
                const std::complex<double> fade = complex_gaussian(fading_rng);
                real.H(m * n + a, k) =
                    los_on * real.los_component(a, m, k) + sqrt_beta * fade;
            }
        }
    }
    return real;
}

inline ChannelRealization sample_channel(const NetworkLayout& layout, const ChannelParams& p,
                                         Rng& rng) {
    return sample_channel(layout, p, rng, rng);
}

} // namespace cfmimo
