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

#include "beamsim/geometry.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

namespace test_helpers {

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / scale;
}

/// Uniform random front-hemisphere directions for property tests.
class DirectionSampler {
  public:
    explicit DirectionSampler(std::uint64_t seed, double theta_max_rad = 1.4)
        : engine_(seed), theta_(0.0, theta_max_rad), phi_(-M_PI, M_PI) {}

    beamsim::SphericalPoint next(double r = 5.0) {
        return beamsim::SphericalPoint{r, theta_(engine_), phi_(engine_)};
    }

  private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> theta_;
    std::uniform_real_distribution<double> phi_;
};

inline std::filesystem::path temp_file(const std::string& stem) {
    static std::atomic<unsigned> counter{0};
    return std::filesystem::temp_directory_path() /
           (stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Per-axis Dirichlet-kernel power ratio |sin(n psi/2) / (n sin(psi/2))|^2
/// with psi = 2 pi spacing du; the closed form of the ULA gain pattern.
inline double dirichlet_ratio(int n, double spacing, double du) {
    const double psi = 2.0 * M_PI * spacing * du;
    const double denom = n * std::sin(psi / 2.0);
    if (std::abs(denom) < 1e-15) {
        return 1.0;
    }
    const double v = std::sin(n * psi / 2.0) / denom;
    return v * v;
}

} // namespace test_helpers
