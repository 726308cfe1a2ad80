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

#include "beamsim/protocol.hpp"

#include "beamsim/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace beamsim {

namespace {

constexpr double kDegPerRad = 180.0 / M_PI;

double gain_db_floored(double gain_linear) {
    if (gain_linear <= 1e-30) {
        return -300.0;
    }
    return std::max(-300.0, 10.0 * std::log10(gain_linear));
}

/// Index of the cell containing `value` in an n-cell partition of
/// [min, min + span]. Interior boundaries tie to the lower cell; the
/// bottom edge stays in cell 0 and the top edge in cell n-1.
int cell_of(double value, double min, double span, int n) {
    if (value < min || value > min + span) {
        return -1;
    }
    const double t = (value - min) / (span / n);
    int idx = static_cast<int>(std::floor(t));
    if (t == std::floor(t) && idx > 0) {
        --idx;
    }
    return std::min(idx, n - 1);
}

} // namespace

AzEl to_az_el(double theta_rad, double phi_rad) {
    const double st = std::sin(theta_rad);
    const double dx = st * std::cos(phi_rad);
    const double dy = st * std::sin(phi_rad);
    const double dz = std::cos(theta_rad);
    return AzEl{std::atan2(dx, dz) * kDegPerRad, std::asin(std::clamp(dy, -1.0, 1.0)) * kDegPerRad};
}

int SsbGrid::cell_index(double az_deg, double el_deg) const {
    const int az_cell = cell_of(az_deg, -az_span_deg / 2.0, az_span_deg, n_az);
    const int el_cell = cell_of(el_deg, -el_span_deg / 2.0, el_span_deg, n_el);
    if (az_cell < 0 || el_cell < 0) {
        throw OutOfSector("direction az=" + std::to_string(az_deg) +
                          " el=" + std::to_string(el_deg) + " deg outside the swept sector");
    }
    return el_cell * n_az + az_cell;
}

void EventLedger::add(std::string label, double duration_ms, double power_w) {
    events_.push_back(LedgerEvent{std::move(label), duration_ms, power_w});
}

double EventLedger::total_latency_ms() const {
    double sum = 0.0;
    for (const auto& e : events_) {
        sum += e.duration_ms;
    }
    return sum;
}

double EventLedger::total_energy_j() const {
    double sum = 0.0;
    for (const auto& e : events_) {
        sum += e.duration_ms * e.power_w / 1000.0;
    }
    return sum;
}

double EventLedger::latency_ms_excluding(std::string_view label) const {
    double sum = 0.0;
    for (const auto& e : events_) {
        if (e.label != label) {
            sum += e.duration_ms;
        }
    }
    return sum;
}

double EventLedger::energy_j_excluding(std::string_view label) const {
    double sum = 0.0;
    for (const auto& e : events_) {
        if (e.label != label) {
            sum += e.duration_ms * e.power_w / 1000.0;
        }
    }
    return sum;
}

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::FiveG_BM:
        return "5gbm";
    case Strategy::CVBM:
        return "cvbm";
    case Strategy::CVBM_Fallback:
        return "cvbm_fallback";
    }
    return "unknown";
}

int ssb_sweep(const SsbGrid& grid, const SphericalPoint& truth, const ProtocolConfig& cfg,
              EventLedger& ledger) {
    const AzEl dir = to_az_el(truth.theta_rad, truth.phi_rad);
    const int index = grid.cell_index(dir.az_deg, dir.el_deg);
    ledger.add(kEventSsbBurst, grid.burst_ms, cfg.power_5gbm_w);
    return index;
}

RefineResult csi_rs_refine(const Codebook& cb, int ssb_index, const SsbGrid& grid,
                           const SphericalPoint& truth, const ProtocolConfig& cfg,
                           EventLedger& ledger) {
    if (ssb_index < 0 || ssb_index >= grid.cells()) {
        throw OutOfSector("SSB index " + std::to_string(ssb_index) + " outside the " +
                          std::to_string(grid.cells()) + "-cell grid");
    }
    const cvec response = upa_response(cb.geometry, truth.theta_rad, truth.phi_rad);

    bool found = false;
    RefineResult best;
    for (std::size_t i = 0; i < cb.codewords.size(); ++i) {
        const auto& entry = cb.codewords[i];
        if (!entry.selectable || !entry.beam.pointing) {
            continue;
        }
        const AzEl dir = to_az_el(entry.beam.pointing->theta_rad, entry.beam.pointing->phi_rad);
        int cell = -1;
        try {
            cell = grid.cell_index(dir.az_deg, dir.el_deg);
        } catch (const OutOfSector&) {
            continue; // codeword points outside the swept sector
        }
        if (cell != ssb_index) {
            continue;
        }
        const double g = beam_gain(entry.beam.weights, response);
        if (!found || g > best.gain_linear) {
            best.codeword_index = i;
            best.gain_linear = g;
            found = true;
        }
    }
    if (!found) {
        throw EmptyCandidateSet("no selectable codeword points inside SSB sector " +
                                std::to_string(ssb_index));
    }
    ledger.add(kEventCsiRsRefinement, cfg.refinement_ms, cfg.power_5gbm_w);
    return best;
}

BeamSession run_5gbm_session(const SphericalPoint& truth, const SsbGrid& grid, const Codebook& cb,
                             const ProtocolConfig& cfg) {
    BeamSession session;
    session.strategy = Strategy::FiveG_BM;
    session.ssb_index = ssb_sweep(grid, truth, cfg, session.ledger);
    const RefineResult refined =
        csi_rs_refine(cb, session.ssb_index, grid, truth, cfg, session.ledger);
    session.codeword_index = static_cast<int>(refined.codeword_index);
    session.chosen_beam = cb.codewords[refined.codeword_index].beam;
    session.effective_gain_linear = refined.gain_linear;
    return session;
}

BeamSession run_cvbm_session(const SphericalPoint& truth, const SsbGrid& grid,
                             const LocalizationNoiseModel& noise, const Codebook& cb,
                             const ProtocolConfig& cfg, std::uint64_t seed) {
    BeamSession session;
    session.ssb_index = ssb_sweep(grid, truth, cfg, session.ledger);

    const std::optional<SphericalPoint> estimate = apply_localization_noise(truth, noise, seed);
    if (estimate) {
        session.strategy = Strategy::CVBM;
        // Steer straight at the estimate; the array cannot point past the
        // hemisphere edge, so the polar angle saturates just below pi/2.
        const double theta = std::min(estimate->theta_rad, M_PI / 2.0 - 1e-9);
        session.chosen_beam = steering_vector_upa(cb.geometry, theta, estimate->phi_rad);
        session.ledger.add(kEventCvbmInference, cfg.cvbm_inference_ms, cfg.power_cvbm_w);
    } else {
        session.strategy = Strategy::CVBM_Fallback;
        const RefineResult refined =
            csi_rs_refine(cb, session.ssb_index, grid, truth, cfg, session.ledger);
        session.codeword_index = static_cast<int>(refined.codeword_index);
        session.chosen_beam = cb.codewords[refined.codeword_index].beam;
    }
    session.effective_gain_linear =
        array_gain(session.chosen_beam, cb.geometry, truth.theta_rad, truth.phi_rad);
    return session;
}

SessionSummary ledger_summary(const std::vector<BeamSession>& sessions) {
    if (sessions.empty()) {
        throw EmptyInput("ledger_summary: no sessions");
    }

    struct Acc {
        std::size_t n = 0;
        double latency = 0.0, energy = 0.0;
        double ref_latency = 0.0, ref_energy = 0.0;
        double gain = 0.0;
    };
    Acc fiveg, cvbm;
    std::size_t fallbacks = 0;

    for (const auto& s : sessions) {
        Acc& acc = (s.strategy == Strategy::FiveG_BM) ? fiveg : cvbm;
        if (s.strategy == Strategy::CVBM_Fallback) {
            ++fallbacks;
        }
        ++acc.n;
        acc.latency += s.ledger.total_latency_ms();
        acc.energy += s.ledger.total_energy_j();
        acc.ref_latency += s.ledger.latency_ms_excluding(kEventSsbBurst);
        acc.ref_energy += s.ledger.energy_j_excluding(kEventSsbBurst);
        acc.gain += s.effective_gain_linear;
    }

    auto to_stats = [](const Acc& acc) {
        StrategyStats st;
        st.sessions = acc.n;
        if (acc.n == 0) {
            return st;
        }
        const double n = static_cast<double>(acc.n);
        st.mean_latency_ms = acc.latency / n;
        st.mean_energy_j = acc.energy / n;
        st.mean_refinement_latency_ms = acc.ref_latency / n;
        st.mean_refinement_energy_j = acc.ref_energy / n;
        st.refinement_power_w =
            (acc.ref_latency > 0.0) ? acc.ref_energy / acc.ref_latency * 1000.0 : 0.0;
        st.mean_gain_linear = acc.gain / n;
        st.mean_gain_db = gain_db_floored(st.mean_gain_linear);
        return st;
    };

    SessionSummary summary;
    summary.fiveg = to_stats(fiveg);
    summary.cvbm = to_stats(cvbm);
    if (cvbm.n > 0) {
        summary.fallback_rate = static_cast<double>(fallbacks) / static_cast<double>(cvbm.n);
    }
    if (fiveg.n > 0 && cvbm.n > 0) {
        if (summary.fiveg.mean_refinement_latency_ms > 0.0) {
            summary.overhead_reduction_refinement =
                1.0 - summary.cvbm.mean_refinement_latency_ms /
                          summary.fiveg.mean_refinement_latency_ms;
        }
        if (summary.fiveg.mean_latency_ms > 0.0) {
            summary.overhead_reduction_total =
                1.0 - summary.cvbm.mean_latency_ms / summary.fiveg.mean_latency_ms;
        }
        if (summary.fiveg.mean_refinement_energy_j > 0.0) {
            summary.refinement_energy_reduction =
                1.0 -
                summary.cvbm.mean_refinement_energy_j / summary.fiveg.mean_refinement_energy_j;
        }
        if (summary.fiveg.mean_gain_linear > 0.0) {
            summary.gain_improvement_percent =
                (summary.cvbm.mean_gain_linear / summary.fiveg.mean_gain_linear - 1.0) * 100.0;
        }
    }
    return summary;
}

std::string session_trace_json(const BeamSession& session) {
    nlohmann::json j;
    j["strategy"] = strategy_name(session.strategy);
    j["ssb_index"] = session.ssb_index;
    if (session.codeword_index >= 0) {
        j["codeword_index"] = session.codeword_index;
    }
    if (session.chosen_beam.pointing) {
        j["beam_theta_deg"] = session.chosen_beam.pointing->theta_rad * kDegPerRad;
        j["beam_phi_deg"] = session.chosen_beam.pointing->phi_rad * kDegPerRad;
    }
    j["gain_db"] = gain_db_floored(session.effective_gain_linear);
    j["latency_ms"] = session.ledger.total_latency_ms();
    j["energy_j"] = session.ledger.total_energy_j();
    return j.dump();
}

} // namespace beamsim
