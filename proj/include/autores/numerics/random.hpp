/*
   Copyright 2026 The autores Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace autores::numerics {

/// Philox4x64 with 10 rounds (Salmon et al., counter-based PRNG).
inline std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> ctr,
                                               std::array<std::uint64_t, 2> key) {
    constexpr std::uint64_t m0 = 0xD2E7470EE14C6C93ULL;
    constexpr std::uint64_t m1 = 0xCA5A826395121157ULL;
    constexpr std::uint64_t w0 = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t w1 = 0xBB67AE8584CAA73BULL;
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 p0 = static_cast<unsigned __int128>(m0) * ctr[0];
        const unsigned __int128 p1 = static_cast<unsigned __int128>(m1) * ctr[2];
        const auto hi0 = static_cast<std::uint64_t>(p0 >> 64);
        const auto lo0 = static_cast<std::uint64_t>(p0);
        const auto hi1 = static_cast<std::uint64_t>(p1 >> 64);
        const auto lo1 = static_cast<std::uint64_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += w0;
        key[1] += w1;
    }
    return ctr;
}

/// Counter-derived draw purposes; each gets a disjoint counter lane.
enum class DrawPurpose : std::uint64_t { brownian = 0, initial_condition = 1 };

/**
 * Reproducible source of standard normals.
 *
 * Draw number k of a stream is a pure function of (master_seed, substream,
 * purpose, k), so a path sees the same increments no matter which thread runs
 * it or in which order paths are scheduled.
 */
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t substream_index)
        : seed_(master_seed), substream_(substream_index) {}

    std::uint64_t master_seed() const noexcept { return seed_; }
    std::uint64_t substream_index() const noexcept { return substream_; }

    /// Four uniforms in (0, 1) from counter block `block`.
    std::array<double, 4> uniforms(std::uint64_t block,
                                   DrawPurpose purpose = DrawPurpose::brownian) const {
        const auto bits = philox4x64({block, substream_, static_cast<std::uint64_t>(purpose), 0},
                                     {seed_, 0x6A09E667F3BCC909ULL});
        std::array<double, 4> u{};
        for (std::size_t i = 0; i < 4; ++i) {
            u[i] = (static_cast<double>(bits[i] >> 11) + 0.5) * 0x1.0p-53;
        }
        return u;
    }

    /// k-th standard normal of the given purpose (Box-Muller, four per block).
    double normal(std::uint64_t k, DrawPurpose purpose = DrawPurpose::brownian) const {
        const auto u = uniforms(k / 4, purpose);
        const std::size_t pair = (k % 4) / 2;
        const double r = std::sqrt(-2.0 * std::log(u[2 * pair]));
        const double angle = 2.0 * std::numbers::pi * u[2 * pair + 1];
        return (k % 2 == 0) ? r * std::cos(angle) : r * std::sin(angle);
    }

private:
    std::uint64_t seed_;
    std::uint64_t substream_;
};

}  // namespace autores::numerics
