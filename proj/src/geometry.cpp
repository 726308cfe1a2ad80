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

#include "beamsim/geometry.hpp"

#include "beamsim/errors.hpp"
#include "beamsim/random.hpp"

#include <cmath>
#include <string>

namespace beamsim {

namespace {

constexpr double kDegPerRad = 180.0 / M_PI;

double wrap_angle(double phi) {
    // into (-pi, pi]
    phi = std::remainder(phi, 2.0 * M_PI);
    if (phi <= -M_PI) {
        phi += 2.0 * M_PI;
    }
    return phi;
}

} // namespace

CartesianPoint detection_to_cartesian(const DetectionRecord& det, const CameraIntrinsics& cam) {
    if (!(det.range_m > 0.0)) {
        throw GeometryError("detection range must be positive, got " +
                            std::to_string(det.range_m));
    }
    const double u = det.bbox.centroid_u();
    const double v = det.bbox.centroid_v();
    if (u < 0.0 || u > cam.image_width_px || v < 0.0 || v > cam.image_height_px) {
        throw GeometryError("bbox centroid (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") outside image bounds");
    }

    // Normalized ray direction in the image plane at unit depth.
    const double a = (u - cam.cx_px) / cam.focal_length_px;
    const double b = (v - cam.cy_px) / cam.focal_length_px;

    const double z = det.range_m / std::sqrt(1.0 + a * a + b * b);
    const CartesianPoint p{a * z, b * z, z};

    if (!std::isfinite(p.z) || p.x * p.x + p.y * p.y >= det.range_m * det.range_m) {
        throw GeometryError("pixel offset inconsistent with measured range");
    }
    return p;
}

SphericalPoint cartesian_to_spherical(const CartesianPoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw GeometryError("non-finite cartesian coordinates");
    }
    if (p.z <= 0.0) {
        throw GeometryError("point is not in front of the array (z = " + std::to_string(p.z) +
                            ")");
    }
    const double rho = std::hypot(p.x, p.y);
    SphericalPoint s;
    s.r = std::hypot(rho, p.z);
    s.theta_rad = std::atan2(rho, p.z);
    s.phi_rad = (rho == 0.0) ? 0.0 : std::atan2(p.y, p.x);
    return s;
}

CartesianPoint spherical_to_cartesian(const SphericalPoint& s) {
    const double st = std::sin(s.theta_rad);
    return CartesianPoint{s.r * st * std::cos(s.phi_rad), s.r * st * std::sin(s.phi_rad),
                          s.r * std::cos(s.theta_rad)};
}

std::optional<SphericalPoint> apply_localization_noise(const SphericalPoint& truth,
                                                       const LocalizationNoiseModel& model,
                                                       std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    if (!(rng.uniform() < model.detection_success_prob)) {
        return std::nullopt;
    }

    SphericalPoint est;
    est.theta_rad = truth.theta_rad + rng.gaussian(model.angle_error_std_deg) / kDegPerRad;
    est.phi_rad = truth.phi_rad + rng.gaussian(model.angle_error_std_deg) / kDegPerRad;
    est.r = truth.r + rng.gaussian(model.distance_error_std_cm) * 1e-2;

    // Fold back into the valid ranges: a negative polar angle is the same
    // direction with the azimuth flipped; range stays positive.
    if (est.theta_rad < 0.0) {
        est.theta_rad = -est.theta_rad;
        est.phi_rad += M_PI;
    }
    est.phi_rad = wrap_angle(est.phi_rad);
    est.r = std::max(est.r, 1e-9);
    return est;
}

ErrorStats localization_error_stats(
    const std::vector<std::pair<CartesianPoint, CartesianPoint>>& estimate_truth_pairs) {
    if (estimate_truth_pairs.empty()) {
        throw EmptyInput("localization_error_stats: empty estimate list");
    }
    double dist_sum_m = 0.0;
    double angle_sum_rad = 0.0;
    for (const auto& [est, truth] : estimate_truth_pairs) {
        const double dx = est.x - truth.x;
        const double dy = est.y - truth.y;
        const double dz = est.z - truth.z;
        dist_sum_m += std::sqrt(dx * dx + dy * dy + dz * dz);

        // Great-circle angle between the two directions seen from the BS;
        // atan2(|cross|, dot) is stable for near-parallel vectors.
        const double cx = est.y * truth.z - est.z * truth.y;
        const double cy = est.z * truth.x - est.x * truth.z;
        const double cz = est.x * truth.y - est.y * truth.x;
        const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
        const double dot = est.x * truth.x + est.y * truth.y + est.z * truth.z;
        if (cross == 0.0 && dot == 0.0) {
            continue; // degenerate zero-length vector, no direction defined
        }
        angle_sum_rad += std::atan2(cross, dot);
    }
    const double n = static_cast<double>(estimate_truth_pairs.size());
    return ErrorStats{dist_sum_m * 100.0 / n, angle_sum_rad * kDegPerRad / n,
                      estimate_truth_pairs.size()};
}

} // namespace beamsim
