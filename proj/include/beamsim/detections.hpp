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

#include "beamsim/config.hpp"
#include "beamsim/geometry.hpp"

#include <string>
#include <vector>

namespace beamsim {

/// One localized mobile detection.
struct LocalizedDetection {
    DetectionRecord record;
    CartesianPoint estimate;
    SphericalPoint estimate_spherical;
};

struct PipelineResult {
    std::vector<LocalizedDetection> estimates; ///< mobile-class records only
    ErrorStats stats;                          ///< over records carrying ground truth
    bool has_stats = false;
    std::size_t person_records = 0;
    std::size_t warning_count = 0; ///< malformed or unconvertible lines, skipped
    std::vector<std::string> warnings;
};

/// Reads a JSON-lines detections file (one record per line with fields
/// `frame_id`, `class`, `bbox`, `range_m` and optional `ground_truth`) and
/// localizes every mobile-class record through the camera model. Person
/// records are counted, not localized. Malformed lines are skipped with a
/// warning. Throws EmptyInput when no mobile record survives and IoError
/// when the file cannot be read.
PipelineResult run_detection_pipeline(const std::string& detections_path,
                                      const ExperimentConfig& cfg);

} // namespace beamsim
