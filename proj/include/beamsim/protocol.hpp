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
#include "beamsim/geometry.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace beamsim {

// Ledger event labels. The SSB burst is common to both strategies; the
// refinement-phase accounting excludes it.
inline constexpr const char* kEventSsbBurst = "ssb_burst";
inline constexpr const char* kEventCsiRsRefinement = "csi_rs_refinement";
inline constexpr const char* kEventCvbmInference = "cvbm_inference";

/// Coarse sweep beam grid: n_az x n_el wide sectors tiling
/// [-az_span/2, az_span/2] x [-el_span/2, el_span/2] around boresight.
struct SsbGrid {
    int n_az = 8;
    int n_el = 4;
    double az_span_deg = 360.0;
    double el_span_deg = 180.0;
    double burst_ms = 5.0;
    double period_ms = 20.0;

    int cells() const { return n_az * n_el; }

    /// Flat sector index (el_cell * n_az + az_cell) containing the given
    /// azimuth/elevation. Values exactly on an interior cell boundary tie
    /// to the lower index. Throws OutOfSector outside the covered span.
    int cell_index(double az_deg, double el_deg) const;
};

/// Timing and power figures of the two strategies.
struct ProtocolConfig {
    double csi_rs_period_ms = 10.0;
    int csi_rs_beams_per_round = 4;
    double refinement_ms = 30.0; ///< (beams_per_round - 1) * csi_rs_period by default
    double cvbm_inference_ms = 15.8;
    double power_5gbm_w = 20.0;
    double power_cvbm_w = 10.0;
};

struct LedgerEvent {
    std::string label;
    double duration_ms = 0.0;
    double power_w = 0.0;
};

/// Ordered per-session timeline; totals are recomputed from the events on
/// every call so they can never go stale.
class EventLedger {
  public:
    void add(std::string label, double duration_ms, double power_w);

    const std::vector<LedgerEvent>& events() const { return events_; }
    double total_latency_ms() const;
    double total_energy_j() const;
    double latency_ms_excluding(std::string_view label) const;
    double energy_j_excluding(std::string_view label) const;

  private:
    std::vector<LedgerEvent> events_;
};

enum class Strategy { FiveG_BM, CVBM, CVBM_Fallback };

std::string strategy_name(Strategy s);

/// Outcome of one beam-establishment session.
struct BeamSession {
    Strategy strategy = Strategy::FiveG_BM;
    BeamWeights chosen_beam;
    int ssb_index = -1;
    int codeword_index = -1; ///< -1 when the beam was steered directly
    EventLedger ledger;
    double effective_gain_linear = 0.0;
};

/// Azimuth/elevation split of a direction: az = atan2(x, z),
/// el = asin(y/|d|), both in degrees.
struct AzEl {
    double az_deg = 0.0;
    double el_deg = 0.0;
};

AzEl to_az_el(double theta_rad, double phi_rad);

/// Coarse sweep: returns the SSB sector containing the true direction
/// (the wide-beam RSRP argmax under ideal sector coverage) and charges one
/// burst event to the ledger.
int ssb_sweep(const SsbGrid& grid, const SphericalPoint& truth, const ProtocolConfig& cfg,
              EventLedger& ledger);

struct RefineResult {
    std::size_t codeword_index = 0;
    double gain_linear = 0.0;
};

/// Narrow-beam stage: genie RSRP argmax over the codewords pointing inside
/// the chosen SSB sector, charged as one refinement_ms event. Ties go to
/// the lowest index. Throws EmptyCandidateSet when the sector holds no
/// selectable codeword.
RefineResult csi_rs_refine(const Codebook& cb, int ssb_index, const SsbGrid& grid,
                           const SphericalPoint& truth, const ProtocolConfig& cfg,
                           EventLedger& ledger);

/// Sweep + codebook refinement.
BeamSession run_5gbm_session(const SphericalPoint& truth, const SsbGrid& grid, const Codebook& cb,
                             const ProtocolConfig& cfg);

/// Sweep + vision localization. On detection success the beam is steered
/// directly at the estimated angles (no codebook quantization); on failure
/// the session falls back to codebook refinement.
BeamSession run_cvbm_session(const SphericalPoint& truth, const SsbGrid& grid,
                             const LocalizationNoiseModel& noise, const Codebook& cb,
                             const ProtocolConfig& cfg, std::uint64_t seed);

/// Aggregate view of one strategy's sessions. The cvbm bucket covers both
/// direct and fallback sessions.
struct StrategyStats {
    std::size_t sessions = 0;
    double mean_latency_ms = 0.0;
    double mean_energy_j = 0.0;
    double mean_refinement_latency_ms = 0.0; ///< excludes the common SSB burst
    double mean_refinement_energy_j = 0.0;
    double refinement_power_w = 0.0; ///< refinement energy over refinement time
    double mean_gain_linear = 0.0;
    double mean_gain_db = 0.0;
};

struct SessionSummary {
    StrategyStats fiveg;
    StrategyStats cvbm;
    double fallback_rate = 0.0;
    /// 1 - cvbm/5gbm refinement-phase latency (the beam-training overhead
    /// both with and without the SSB burst shared by the two schemes).
    double overhead_reduction_refinement = 0.0;
    double overhead_reduction_total = 0.0;
    double refinement_energy_reduction = 0.0;
    double gain_improvement_percent = 0.0; ///< mean linear gain ratio - 1
};

/// Per-strategy means over a batch of sessions. Throws EmptyInput.
SessionSummary ledger_summary(const std::vector<BeamSession>& sessions);

/// One-line JSON trace of a session (strategy, chosen indices/angles,
/// gain in dB, latency in ms, energy in J).
std::string session_trace_json(const BeamSession& session);

} // namespace beamsim
