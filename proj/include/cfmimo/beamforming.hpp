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
// Centralized MMSE combining (uplink) and RZF precoding (downlink) reduced
// to effective per-UE-pair scalar coefficients. Both reductions evaluate the
// same regularized Gram quadratic form; the downlink acts on the conjugated
// channel, normalizes each UE's beam to unit transmit power, and sees plain
// receiver noise instead of the combined noise term.

#pragma once

#include <armadillo>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "cfmimo/errors.hpp"

namespace cfmimo {

enum class Direction { Uplink, Downlink };

/// K x K effective channel coefficients after centralized processing plus the
/// per-UE effective noise variances. Entry (k, l) couples UE l's stream into
/// UE k's output: the diagonal is the desired gain, off-diagonals are
/// interference. The diagonal is real and nonnegative in both directions; the
/// uplink matrix is additionally Hermitian (the downlink one is not, since
/// its columns carry the per-beam power normalization).
struct EffectiveCoefficients {
    Direction direction = Direction::Uplink;
    arma::cx_mat coeff;
    arma::vec noise_var;

    std::size_t num_ues() const { return coeff.n_cols; }
};

namespace detail {

/// Solves (G G^H + reg I) X = G through a Cholesky factorization and returns
/// the quadratic forms G^H X together with the squared column norms of X.
/// The factorization route avoids forming the explicit inverse, which matters
/// for small regularizers; a failed factorization (impossible for reg > 0
/// short of floating-point underflow) is surfaced as NumericalError.
inline std::pair<arma::cx_mat, arma::vec> regularized_gram_forms(const arma::cx_mat& channel,
                                                                 double regularizer) {
    arma::cx_mat gram = channel * channel.t(); // .t() is the conjugate transpose
    gram.diag() += regularizer;

    arma::cx_mat chol_upper;
    if (!arma::chol(chol_upper, gram))
        throw NumericalError("regularized Gram factorization hit a non-positive pivot");

    const arma::cx_mat solved = arma::solve(
        arma::trimatu(chol_upper), arma::solve(arma::trimatl(chol_upper.t()), channel));

    arma::cx_mat forms = channel.t() * solved;
    // The exact quadratic-form matrix is Hermitian with a real nonnegative
    // diagonal; restore both properties lost to rounding.
    forms = 0.5 * (forms + forms.t());
    for (std::size_t k = 0; k < forms.n_cols; ++k)
        forms(k, k) = std::complex<double>(std::max(0.0, forms(k, k).real()), 0.0);

    arma::vec solved_norms(channel.n_cols);
    for (std::size_t k = 0; k < channel.n_cols; ++k)
        solved_norms(k) = std::real(arma::cdot(solved.col(k), solved.col(k)));

    return {std::move(forms), std::move(solved_norms)};
}

inline void check_channel_args(const arma::cx_mat& channel, double noise_power,
                               const char* what) {
    if (channel.n_rows == 0 || channel.n_cols == 0)
        throw std::invalid_argument(std::string(what) + ": channel matrix must be nonempty");
    if (!(noise_power > 0.0))
        throw std::invalid_argument(std::string(what) + ": noise power must be positive");
}

} // namespace detail

/// Uplink MMSE combining: coeff(k, l) = h_k^H (H H^H + N0 I)^-1 h_l and
/// noise_var(k) = N0 ||(H H^H + N0 I)^-1 h_k||^2.
inline EffectiveCoefficients mmse_effective_coeffs(const arma::cx_mat& channel,
                                                   double noise_power) {
    detail::check_channel_args(channel, noise_power, "mmse_effective_coeffs");
    auto [coeff, solved_norms] = detail::regularized_gram_forms(channel, noise_power);
    return {Direction::Uplink, std::move(coeff), noise_power * solved_norms};
}

/// Downlink RZF precoding with unit-power beams. UE l's stream is carried by
/// the regularized beam a_l = (H* H^T + N0 I)^-1 h_l* scaled to unit transmit
/// power, so the power-control coefficient is the stream's radiated power and
/// shares the uplink's per-UE budget semantics:
///   coeff(k, l) = h_k^T a_l / ||a_l||.
/// Columns are scaled by their own beam norm, so the matrix is not Hermitian
/// (the raw quadratic form before scaling is). A zero channel produces zero
/// beams and zero coefficients. Every UE sees plain receiver noise, so
/// noise_var is N0 across the board.
inline EffectiveCoefficients rzf_effective_coeffs(const arma::cx_mat& channel,
                                                  double noise_power) {
    detail::check_channel_args(channel, noise_power, "rzf_effective_coeffs");
    auto [coeff, solved_norms] =
        detail::regularized_gram_forms(arma::cx_mat(arma::conj(channel)), noise_power);
    for (std::size_t l = 0; l < coeff.n_cols; ++l) {
        const double beam_norm = std::sqrt(solved_norms(l));
        if (beam_norm > 0.0)
            coeff.col(l) /= beam_norm;
        else
            coeff.col(l).zeros();
    }
    return {Direction::Downlink, std::move(coeff),
            arma::vec(channel.n_cols, arma::fill::value(noise_power))};
}

} // namespace cfmimo
