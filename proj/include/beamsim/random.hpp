// SPDX-License-Identifier: Apache-2.0
//
// beamsim - link-level simulator comparing codebook-based and
// vision-aided beam management for mmWave/THz downlinks
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

#include <cmath>
#include <cstdint>
#include <random>

namespace beamsim {

/// SplitMix64 mixing step. Bit-exact on every platform, so seed derivation
/// does not depend on the standard library implementation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based sub-seed derivation: sub-stream `counter` of `master`.
/// Each grid cell gets its own stream, so results are independent of the
/// order cells are evaluated in.
inline std::uint64_t derive_subseed(std::uint64_t master, std::uint64_t counter) {
    return splitmix64(master ^ splitmix64(counter));
}

/// Seeded random source producing a platform-independent draw sequence.
/// mt19937_64 output is fully specified by the standard; uniform and
/// gaussian conversion are done by hand instead of through the
/// implementation-defined std::distributions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Zero-mean gaussian via Box-Muller (cosine branch). Always consumes
    /// two uniforms, and returns exactly 0.0 when sigma is 0.
    double gaussian(double sigma) {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
        const double u2 = uniform();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace beamsim
