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

#include "beamsim/array.hpp"
#include "beamsim/channel.hpp"
#include "beamsim/geometry.hpp"
#include "beamsim/protocol.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace beamsim {

/// Full experiment description. Defaults reproduce the reference setup:
/// 8x8 transmit UPA (64 antennas), 2x2 receive array, 256-codeword DFT
/// codebook, 0.1 THz carrier with 1 GHz bandwidth, users on a 20x20 m
/// grid in front of the BS.
struct ExperimentConfig {
    // [experiment]
    double area_width_m = 20.0;
    double area_depth_m = 20.0;
    int grid_resolution = 100; ///< points per axis
    std::uint64_t seed = 1;
    double bs_height_m = 0.0; ///< BS elevation above the user plane

    // [array]
    ArrayGeometry tx_array{8, 8, 0.5};
    ArrayGeometry rx_array{2, 2, 0.5};
    int oversampling_h = 2;
    int oversampling_v = 2;

    // [link], [ssb], [protocol], [noise], [camera]
    LinkBudget link;
    SsbGrid ssb;
    ProtocolConfig protocol;
    LocalizationNoiseModel noise;
    CameraIntrinsics camera;

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Parses the key-value config format. Unknown sections or keys, missing
/// '=' and unparseable numbers raise ParseError with the origin and line;
/// the result is validated before being returned. An empty stream yields
/// the defaults.
ExperimentConfig parse_config(std::istream& in, const std::string& origin);

/// parse_config over a file path. Throws IoError when unreadable.
ExperimentConfig load_config(const std::string& path);

/// Renders a config in the same format load_config reads, with every key
/// present. Used for --print-defaults and for echoing the effective
/// config into the run log.
std::string render_config(const ExperimentConfig& cfg);

std::string default_config_text();

} // namespace beamsim
