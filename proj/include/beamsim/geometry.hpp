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

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace beamsim {

// Camera / BS frame convention: +z is the optical (boresight) axis, +x the
// horizontal image axis, +y the vertical image axis. All angles in radians
// unless a _deg suffix says otherwise.

/// Pinhole camera bridging pixel coordinates to metric camera-frame rays.
struct CameraIntrinsics {
    double focal_length_px = 1000.0;
    double cx_px = 960.0; ///< principal point, horizontal
    double cy_px = 540.0; ///< principal point, vertical
    double image_width_px = 1920.0;
    double image_height_px = 1080.0;
};

enum class DetectionClass { person, mobile };

/// Axis-aligned pixel bounding box, (u_min, v_min) upper-left.
struct BoundingBox {
    double u_min = 0.0;
    double v_min = 0.0;
    double u_max = 0.0;
    double v_max = 0.0;

    double centroid_u() const { return 0.5 * (u_min + u_max); }
    double centroid_v() const { return 0.5 * (v_min + v_max); }
};

struct CartesianPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0; ///< along boresight
};

/// (r, theta, phi) relative to the BS: r in meters, theta the polar angle
/// off boresight in [0, pi/2), phi the azimuth around boresight in
/// (-pi, pi]. phi is defined as 0 on the boresight axis itself.
struct SphericalPoint {
    double r = 0.0;
    double theta_rad = 0.0;
    double phi_rad = 0.0;
};

/// One object-detector output row: class, pixel bbox, range to the bbox
/// centroid measured along the ray, and an optional labeled 3D position.
struct DetectionRecord {
    std::int64_t frame_id = 0;
    DetectionClass class_label = DetectionClass::mobile;
    BoundingBox bbox;
    double range_m = 0.0;
    std::optional<CartesianPoint> ground_truth;
};

/// Statistical stand-in for the detector + depth sensor: independent
/// gaussian errors on the two angles (degrees) and on range (cm), plus a
/// Bernoulli detection-success probability.
struct LocalizationNoiseModel {
    double angle_error_std_deg = 0.23;
    double distance_error_std_cm = 3.74;
    double detection_success_prob = 0.9067;
};

struct ErrorStats {
    double mean_distance_cm = 0.0;
    double mean_angle_deg = 0.0;
    std::size_t count = 0;
};

/// Converts a detection into the 3D point at `range_m` along the ray
/// through the bbox centroid. Solves x = z*(u-cx)/f and y = z*(v-cy)/f
/// jointly with x^2+y^2+z^2 = r^2, which realizes z = sqrt(r^2-(x^2+y^2)).
///
/// Throws GeometryError when the centroid falls outside the image bounds,
/// the range is non-positive, or the implied metric offset is inconsistent
/// with the measured range.
CartesianPoint detection_to_cartesian(const DetectionRecord& det, const CameraIntrinsics& cam);

/// theta = arctan(sqrt(x^2+y^2)/z), phi = atan2(y, x), r = |p|.
/// Throws GeometryError for z <= 0 (point not in front of the array).
SphericalPoint cartesian_to_spherical(const CartesianPoint& p);

CartesianPoint spherical_to_cartesian(const SphericalPoint& s);

/// Perturbs a true position by the noise model. Returns nullopt for a
/// detection failure (probability 1 - detection_success_prob). Angle noise
/// is drawn per angle in degrees, range noise in cm; the output is folded
/// back into the valid (r, theta, phi) ranges. Deterministic given seed.
std::optional<SphericalPoint> apply_localization_noise(const SphericalPoint& truth,
                                                       const LocalizationNoiseModel& model,
                                                       std::uint64_t rng_seed);

/// Mean Euclidean distance error (cm) and mean great-circle angle between
/// estimated and true directions (degrees). Throws EmptyInput on an empty
/// list.
ErrorStats localization_error_stats(
    const std::vector<std::pair<CartesianPoint, CartesianPoint>>& estimate_truth_pairs);

} // namespace beamsim
