// Copyright 2026 The skyrtex authors.
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

/**
 * @file
 * Deterministic pseudo-random number generation.
 *
 * All randomness in the project flows through the generators defined here so
 * that every output is bit-reproducible from a 64-bit seed, independent of
 * the standard library implementation. std::uniform_*_distribution is
 * deliberately avoided: the C++ standard does not pin its output sequence.
 */

#pragma once

#include <array>
#include <cstdint>

namespace skyrtex::rng {

/// Name of the generator family, recorded in batch manifests.
inline constexpr const char *kPrngName = "xoshiro256++ seeded via splitmix64";

/// One step of SplitMix64 (Steele, Lea & Flood, 2014). Advances `state` and
/// returns the next output.
inline constexpr std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Keyed seed derivation: maps (seed, key) to a new 64-bit seed by running
/// two SplitMix64 steps from the offset state. Used wherever one base seed
/// must fan out to independent substreams (per-image seeds, per-term draws,
/// the u/v field pair). Distinctness over a batch is checked at runtime.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    std::uint64_t s = seed ^ (key * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    (void)splitmix64(s);
    return splitmix64(s);
}

/**
 * xoshiro256++ 1.0 (Blackman & Vigna, 2019). The state is seeded from
 * SplitMix64 as the authors recommend, so a single 64-bit seed fully
 * determines the stream.
 */
class Xoshiro256 {
  public:
    explicit constexpr Xoshiro256(std::uint64_t seed) : state_{} {
        for (auto &word : state_)
            word = splitmix64(seed);
    }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 significant bits.
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Fixed-point multiply keeps the mapping
    /// identical on every platform; the bias of n/2^64 is negligible here.
    constexpr std::uint64_t uniform_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_;
};

} // namespace skyrtex::rng
