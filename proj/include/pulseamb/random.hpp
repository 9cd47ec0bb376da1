// Copyright 2026 The pulseamb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, counter), so sample streams do not depend on evaluation order.
//
//   bits(seed, n)    = the n-th output of SplitMix64 started at `seed`,
//                      i.e. mix64(seed + (n + 1) * 0x9E3779B97F4A7C15)
//   uniform(seed, n) = ((bits >> 11) + 0.5) * 2^-53, in (0, 1)
//   normal(seed, n)  = -sqrt(2) * erfc_inv(2 * uniform)   (inverse CDF)

#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace pulseamb::rng {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t bits(std::uint64_t seed, std::uint64_t counter) noexcept {
    return mix64(seed + (counter + 1) * golden_gamma);
}

constexpr double uniform(std::uint64_t seed, std::uint64_t counter) noexcept {
    return (static_cast<double>(bits(seed, counter) >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_normal(std::uint64_t seed, std::uint64_t counter) {
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * uniform(seed, counter));
}

/// Seed of grid cell (row, col): mix64 chained over seed, row and column.
constexpr std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t row, std::uint64_t col) noexcept {
    std::uint64_t h = mix64(seed + golden_gamma);
    h = mix64(h ^ (row + golden_gamma));
    h = mix64(h ^ (col + 2 * golden_gamma));
    return h;
}

}  // namespace pulseamb::rng
