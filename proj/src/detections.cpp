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

#include "beamsim/detections.hpp"

#include "beamsim/errors.hpp"

#include <json.hpp>

#include <fstream>

namespace beamsim {

namespace {

DetectionRecord parse_record(const nlohmann::json& j) {
    DetectionRecord rec;
    rec.frame_id = j.at("frame_id").get<std::int64_t>();

    const std::string cls = j.at("class").get<std::string>();
    if (cls == "person") {
        rec.class_label = DetectionClass::person;
    } else if (cls == "mobile") {
        rec.class_label = DetectionClass::mobile;
    } else {
        throw ParseError("unknown class '" + cls + "'");
    }

    const auto& bbox = j.at("bbox");
    if (!bbox.is_array() || bbox.size() != 4) {
        throw ParseError("bbox must be [u_min, v_min, u_max, v_max]");
    }
    rec.bbox = BoundingBox{bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(),
                           bbox[3].get<double>()};
    if (!(rec.bbox.u_min < rec.bbox.u_max) || !(rec.bbox.v_min < rec.bbox.v_max)) {
        throw ParseError("bbox corners out of order");
    }

    rec.range_m = j.at("range_m").get<double>();
    if (!(rec.range_m > 0.0)) {
        throw ParseError("range_m must be positive");
    }

    if (j.contains("ground_truth")) {
        const auto& gt = j.at("ground_truth");
        if (!gt.is_array() || gt.size() != 3) {
            throw ParseError("ground_truth must be [x, y, z]");
        }
        rec.ground_truth =
            CartesianPoint{gt[0].get<double>(), gt[1].get<double>(), gt[2].get<double>()};
    }
    return rec;
}

} // namespace

PipelineResult run_detection_pipeline(const std::string& detections_path,
                                      const ExperimentConfig& cfg) {
    std::ifstream in(detections_path);
    if (!in) {
        throw IoError("cannot open detections file '" + detections_path + "'");
    }

    PipelineResult result;
    std::vector<std::pair<CartesianPoint, CartesianPoint>> pairs;
    std::string line;
    int lineno = 0;

    auto warn = [&](const std::string& what) {
        ++result.warning_count;
        result.warnings.push_back(detections_path + ":" + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        DetectionRecord rec;
        try {
            rec = parse_record(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            warn(std::string("malformed record: ") + e.what());
            continue;
        } catch (const ParseError& e) {
            warn(std::string("malformed record: ") + e.what());
            continue;
        }

        if (rec.class_label == DetectionClass::person) {
            // The person box only drives the upstream detector cascade.
            ++result.person_records;
            continue;
        }

        try {
            LocalizedDetection loc;
            loc.record = rec;
            loc.estimate = detection_to_cartesian(rec, cfg.camera);
            loc.estimate_spherical = cartesian_to_spherical(loc.estimate);
            if (rec.ground_truth) {
                pairs.emplace_back(loc.estimate, *rec.ground_truth);
            }
            result.estimates.push_back(std::move(loc));
        } catch (const GeometryError& e) {
            warn(std::string("record not localizable: ") + e.what());
        }
    }

    if (result.estimates.empty()) {
        throw EmptyInput("detections file '" + detections_path +
                         "' contains no usable mobile-class record");
    }
    if (!pairs.empty()) {
        result.stats = localization_error_stats(pairs);
        result.has_stats = true;
    }
    return result;
}

} // namespace beamsim
