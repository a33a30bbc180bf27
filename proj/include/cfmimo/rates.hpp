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
// SINRs, achievable rates, the max-min objective and Jain's fairness index.
// All functions are pure; the particle swarm evaluates them concurrently.
//
// The *_from_power_gains variants take a real K x K matrix of squared
// coefficient magnitudes. That is the shared core: the per-realization path
// squares the effective coefficients of one realization, while the
// ensemble-interference mode substitutes batch-averaged off-diagonal powers.

#pragma once

#include <armadillo>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "cfmimo/beamforming.hpp"

namespace cfmimo {

/// Power-control coefficients, one nonnegative entry per UE.
using PowerVector = arma::vec;

inline void validate_power_vector(const PowerVector& zeta, double zeta_max) {
    if (zeta.n_elem == 0)
        throw std::invalid_argument("power vector must be nonempty");
    if (zeta.min() < 0.0)
        throw std::invalid_argument("power vector entries must be nonnegative");
    if (zeta.max() > zeta_max)
        throw std::invalid_argument("power vector entries must not exceed the power cap");
}

struct RateReport {
    arma::vec per_ue_rate; // bits/s/Hz
    arma::vec per_ue_sinr; // linear
    double min_rate = 0.0;
    double jain = 1.0;
};

/// Jain's index (sum r)^2 / (K sum r^2): 1 under perfect equality, 1/K when a
/// single UE holds everything. The all-zero vector is defined as 1 (equal
/// shares of nothing) to keep averages meaningful.
inline double jain_index(const arma::vec& rates) {
    const double total = arma::accu(rates);
    const double sum_sq = arma::dot(rates, rates);
    if (sum_sq == 0.0)
        return 1.0;
    return total * total / (static_cast<double>(rates.n_elem) * sum_sq);
}

namespace detail {

// Interference accumulated term by term; subtracting the diagonal from a full
// row dot product would cancel badly when one entry dominates.
inline double sinr_entry(const arma::mat& power_gain, const arma::vec& noise_var,
                         const PowerVector& zeta, std::size_t k) {
    const double desired = power_gain(k, k) * zeta(k);
    if (desired <= 0.0)
        return 0.0;
    double denominator = noise_var(k);
    for (std::size_t l = 0; l < zeta.n_elem; ++l)
        if (l != k)
            denominator += power_gain(k, l) * zeta(l);
    return desired / denominator;
}

inline void check_rate_args(const arma::mat& power_gain, const arma::vec& noise_var,
                            const PowerVector& zeta) {
    if (power_gain.n_rows != power_gain.n_cols)
        throw std::invalid_argument("power-gain matrix must be square");
    if (noise_var.n_elem != power_gain.n_rows || zeta.n_elem != power_gain.n_rows)
        throw std::invalid_argument("power-gain, noise and power-vector sizes must agree");
}

} // namespace detail

inline double sinr_from_power_gains(const arma::mat& power_gain, const arma::vec& noise_var,
                                    const PowerVector& zeta, std::size_t k) {
    detail::check_rate_args(power_gain, noise_var, zeta);
    if (k >= zeta.n_elem)
        throw std::out_of_range("sinr_from_power_gains: UE index out of range");
    return detail::sinr_entry(power_gain, noise_var, zeta, k);
}

/// Max-min objective on squared-magnitude gains; allocation-free, this is the
/// optimizer hot path.
inline double min_rate_from_power_gains(const arma::mat& power_gain, const arma::vec& noise_var,
                                        const PowerVector& zeta) {
    double min_rate = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < zeta.n_elem; ++k) {
        const double rate = std::log2(1.0 + detail::sinr_entry(power_gain, noise_var, zeta, k));
        min_rate = std::min(min_rate, rate);
    }
    return min_rate;
}

inline RateReport rate_report_from_power_gains(const arma::mat& power_gain,
                                               const arma::vec& noise_var,
                                               const PowerVector& zeta) {
    detail::check_rate_args(power_gain, noise_var, zeta);
    const std::size_t num_ues = zeta.n_elem;
    RateReport report;
    report.per_ue_sinr.set_size(num_ues);
    report.per_ue_rate.set_size(num_ues);
    for (std::size_t k = 0; k < num_ues; ++k) {
        report.per_ue_sinr(k) = detail::sinr_entry(power_gain, noise_var, zeta, k);
        report.per_ue_rate(k) = std::log2(1.0 + report.per_ue_sinr(k));
    }
    report.min_rate = report.per_ue_rate.min();
    report.jain = jain_index(report.per_ue_rate);
    return report;
}

/// Squared coefficient magnitudes of one realization.
inline arma::mat coefficient_power(const EffectiveCoefficients& coeffs) {
    return arma::square(arma::abs(coeffs.coeff));
}

/// Instantaneous SINR of UE k under this realization's coefficients:
/// |c_kk|^2 zeta_k over the power-weighted interference plus effective noise.
inline double instantaneous_sinr(const EffectiveCoefficients& coeffs, const PowerVector& zeta,
                                 std::size_t k) {
    return sinr_from_power_gains(coefficient_power(coeffs), coeffs.noise_var, zeta, k);
}

/// Per-UE rates log2(1 + SINR), their minimum, and Jain's index.
inline RateReport rate_report(const EffectiveCoefficients& coeffs, const PowerVector& zeta) {
    return rate_report_from_power_gains(coefficient_power(coeffs), coeffs.noise_var, zeta);
}

/// The objective handed to the power-control optimizers.
inline double min_rate_fitness(const EffectiveCoefficients& coeffs, const PowerVector& zeta) {
    detail::check_rate_args(coefficient_power(coeffs), coeffs.noise_var, zeta);
    return min_rate_from_power_gains(coefficient_power(coeffs), coeffs.noise_var, zeta);
}

} // namespace cfmimo
