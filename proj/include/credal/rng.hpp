/* Copyright 2026 The credal-bounds Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstdint>

namespace credal {

/**
 * Counter-style deterministic random stream (splitmix64 core).
 *
 * Streams are derived, not split: substream(seed, i) gives an independent
 * stream for replicate i, and draws within a stream are sequential. Results
 * are bit-identical across platforms because every distribution below is
 * computed from the raw 64-bit output with explicit arithmetic (no
 * std::normal_distribution, whose algorithm is implementation-defined).
 */
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_double() < p; }

    /**
     * Standard normal via Box-Muller. Always consumes exactly two uniforms
     * (the second variate is discarded) so the stream position after k
     * normal draws is independent of call history.
     */
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        // guard log(0)
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    double next_normal(double mean, double sd) { return mean + sd * next_normal(); }

    /// Rademacher sign, +1 or -1.
    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

  private:
    std::uint64_t state_;
};

/// Mixes a master seed with a replicate index into a fresh stream seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline RngStream substream(std::uint64_t master, std::uint64_t index) {
    return RngStream(substream_seed(master, index));
}

}  // namespace credal
