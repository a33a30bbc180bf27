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
// All randomness flows through explicit generator objects seeded by the
// caller. Sampling primitives are hand-rolled on top of the raw 64-bit
// output so that a given seed produces the same stream on every platform;
// std::*_distribution is implementation-defined and is not used anywhere.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace cfmimo {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Stable 64-bit child-seed derivation from (master seed, stream label,
/// stream index). Distinct labels or indices yield independent streams no
/// matter how the work is scheduled across threads.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view stream_label,
                                 std::uint64_t index) {
    // FNV-1a over the label bytes, then two splitmix64 mixing rounds
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : stream_label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return detail::splitmix64(detail::splitmix64(master_seed ^ h) ^ index);
}

/// Uniform double in [0, 1) from the top 53 bits of one generator word.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Zero-mean circularly symmetric complex Gaussian with unit variance,
/// i.e. E[|z|^2] = 1. Box-Muller on exactly two uniforms per sample.
inline std::complex<double> complex_gaussian(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng); // in (0, 1], keeps the log finite
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(phase), radius * std::sin(phase)};
}

} // namespace cfmimo
