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
#include "beamsim/protocol.hpp"

#include <string>
#include <vector>

namespace beamsim {

/// Link metrics of one strategy at one grid point.
struct StrategyCell {
    double gain_linear = 0.0;
    double gain_db = 0.0;
    double rsrp_dbm = 0.0;
    double snr_db = 0.0;
    double rate_bps = 0.0;
};

/// Per-grid-point result of the side-by-side comparison.
struct RateMapCell {
    double x_m = 0.0;
    double y_m = 0.0;
    StrategyCell fiveg;
    StrategyCell cvbm;
    Strategy cvbm_strategy_used = Strategy::CVBM;
};

struct GridResult {
    std::vector<RateMapCell> cells; ///< row-major, sorted by (y, x)
    SessionSummary summary;
};

/// Runs both strategies at every grid point. The BS sits at the midpoint
/// of the area's near edge with boresight into the area; cell centers
/// sample the area uniformly. Each cell draws its randomness from a
/// counter-derived sub-seed of cfg.seed, so the result is a pure function
/// of the config. `trace_sink`, when non-null, receives every session in
/// cell order (5G-BM then CVBM per cell).
GridResult run_grid_experiment(const ExperimentConfig& cfg,
                               std::vector<BeamSession>* trace_sink = nullptr);

/// Writes `x_m,y_m,rate_5gbm_bps,rate_cvbm_bps,gain_5gbm_db,gain_cvbm_db,
/// strategy_used` rows sorted by (y, x) with 6-significant-digit
/// formatting. Throws IoError on write failure and refuses non-finite
/// values.
void emit_heatmap_csv(const std::vector<RateMapCell>& cells, const std::string& path);

enum class SummaryFormat { text, json };

/// Renders the comparison summary: per-strategy mean gain, latency and
/// energy, overhead reduction, gain improvement and fallback rate. The
/// text and json forms carry identical numeric values.
std::string emit_summary(const SessionSummary& summary, SummaryFormat format);

} // namespace beamsim
