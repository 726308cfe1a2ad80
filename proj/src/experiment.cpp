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

#include "beamsim/experiment.hpp"

#include "beamsim/channel.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/random.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace beamsim {

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

double gain_db_floored(double gain_linear) {
    if (gain_linear <= 1e-30) {
        return -300.0;
    }
    return std::max(-300.0, 10.0 * std::log10(gain_linear));
}

StrategyCell evaluate_link(const BeamSession& session, const ChannelRealization& channel,
                           const cvec& rx_combiner, const ExperimentConfig& cfg) {
    StrategyCell cell;
    cell.gain_linear = session.effective_gain_linear;
    cell.gain_db = gain_db_floored(cell.gain_linear);
    cell.rsrp_dbm =
        rsrp_dbm(channel, session.chosen_beam.weights, rx_combiner, cfg.link.tx_power_dbm_max);
    const SnrRate sr = snr_and_rate(cell.rsrp_dbm, cfg.link);
    cell.snr_db = sr.snr_db;
    cell.rate_bps = sr.rate_bps;
    return cell;
}

} // namespace

GridResult run_grid_experiment(const ExperimentConfig& cfg,
                               std::vector<BeamSession>* trace_sink) {
    cfg.validate();

    const Codebook cb = dft_codebook_upa(cfg.tx_array, cfg.oversampling_h, cfg.oversampling_v);
    const cvec rx_combiner = upa_response(cfg.rx_array, 0.0, 0.0); // matched, boresight arrival
    const int res = cfg.grid_resolution;
    const double dx = cfg.area_width_m / res;
    const double dy = cfg.area_depth_m / res;

    GridResult result;
    result.cells.reserve(static_cast<std::size_t>(res) * static_cast<std::size_t>(res));
    std::vector<BeamSession> sessions;
    sessions.reserve(2 * result.cells.capacity());

    for (int j = 0; j < res; ++j) {
        const double y = (j + 0.5) * dy;
        for (int i = 0; i < res; ++i) {
            const double x = -cfg.area_width_m / 2.0 + (i + 0.5) * dx;
            const std::uint64_t cell_counter =
                static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(res) +
                static_cast<std::uint64_t>(i);

            // World (x east, y into the area) to BS frame (z boresight).
            const CartesianPoint rel{x, -cfg.bs_height_m, y};
            SphericalPoint truth;
            ChannelRealization channel;
            try {
                truth = cartesian_to_spherical(rel);
                channel = los_channel(cfg.tx_array, cfg.rx_array, truth, cfg.link);

                RateMapCell cell;
                cell.x_m = x;
                cell.y_m = y;

                BeamSession s5 = run_5gbm_session(truth, cfg.ssb, cb, cfg.protocol);
                BeamSession scv = run_cvbm_session(truth, cfg.ssb, cfg.noise, cb, cfg.protocol,
                                                   derive_subseed(cfg.seed, cell_counter));

                cell.fiveg = evaluate_link(s5, channel, rx_combiner, cfg);
                cell.cvbm = evaluate_link(scv, channel, rx_combiner, cfg);
                cell.cvbm_strategy_used = scv.strategy;
                result.cells.push_back(cell);

                sessions.push_back(std::move(s5));
                sessions.push_back(std::move(scv));
            } catch (const Error& e) {
                throw Error("grid cell (x=" + fmt6(x) + " m, y=" + fmt6(y) +
                            " m) failed: " + e.what());
            }
        }
    }

    result.summary = ledger_summary(sessions);
    if (trace_sink != nullptr) {
        *trace_sink = std::move(sessions);
    }
    return result;
}

void emit_heatmap_csv(const std::vector<RateMapCell>& cells, const std::string& path) {
    if (cells.empty()) {
        throw EmptyInput("emit_heatmap_csv: no cells");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << "x_m,y_m,rate_5gbm_bps,rate_cvbm_bps,gain_5gbm_db,gain_cvbm_db,strategy_used\n";
    for (const auto& c : cells) {
        const double values[] = {c.x_m,          c.y_m,          c.fiveg.rate_bps,
                                 c.cvbm.rate_bps, c.fiveg.gain_db, c.cvbm.gain_db};
        for (const double v : values) {
            if (!std::isfinite(v)) {
                throw IoError("non-finite value at cell (x=" + fmt6(c.x_m) +
                              ", y=" + fmt6(c.y_m) + ")");
            }
        }
        out << fmt6(c.x_m) << ',' << fmt6(c.y_m) << ',' << fmt6(c.fiveg.rate_bps) << ','
            << fmt6(c.cvbm.rate_bps) << ',' << fmt6(c.fiveg.gain_db) << ','
            << fmt6(c.cvbm.gain_db) << ',' << strategy_name(c.cvbm_strategy_used) << '\n';
    }
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

std::string emit_summary(const SessionSummary& s, SummaryFormat format) {
    if (format == SummaryFormat::json) {
        nlohmann::json j;
        auto strat = [](const StrategyStats& st) {
            nlohmann::json o;
            o["sessions"] = st.sessions;
            o["mean_gain_db"] = st.mean_gain_db;
            o["mean_gain_linear"] = st.mean_gain_linear;
            o["mean_latency_ms"] = st.mean_latency_ms;
            o["mean_energy_j"] = st.mean_energy_j;
            o["refinement_latency_ms"] = st.mean_refinement_latency_ms;
            o["refinement_energy_j"] = st.mean_refinement_energy_j;
            o["refinement_power_w"] = st.refinement_power_w;
            return o;
        };
        j["5gbm"] = strat(s.fiveg);
        j["cvbm"] = strat(s.cvbm);
        j["fallback_rate"] = s.fallback_rate;
        j["overhead_reduction_refinement_percent"] = s.overhead_reduction_refinement * 100.0;
        j["overhead_reduction_total_percent"] = s.overhead_reduction_total * 100.0;
        j["refinement_energy_reduction_percent"] = s.refinement_energy_reduction * 100.0;
        j["gain_improvement_percent"] = s.gain_improvement_percent;
        return j.dump(2) + "\n";
    }

    std::ostringstream out;
    out << "beam management comparison\n";
    out << "                                5G-BM         CVBM\n";
    out << "  sessions                " << fmt6(static_cast<double>(s.fiveg.sessions)) << "  "
        << fmt6(static_cast<double>(s.cvbm.sessions)) << "\n";
    out << "  mean gain (dB)          " << fmt6(s.fiveg.mean_gain_db) << "  "
        << fmt6(s.cvbm.mean_gain_db) << "\n";
    out << "  mean latency (ms)       " << fmt6(s.fiveg.mean_latency_ms) << "  "
        << fmt6(s.cvbm.mean_latency_ms) << "\n";
    out << "  mean energy (J)         " << fmt6(s.fiveg.mean_energy_j) << "  "
        << fmt6(s.cvbm.mean_energy_j) << "\n";
    out << "  refinement latency (ms) " << fmt6(s.fiveg.mean_refinement_latency_ms) << "  "
        << fmt6(s.cvbm.mean_refinement_latency_ms) << "\n";
    out << "  refinement energy (J)   " << fmt6(s.fiveg.mean_refinement_energy_j) << "  "
        << fmt6(s.cvbm.mean_refinement_energy_j) << "\n";
    out << "  refinement power (W)    " << fmt6(s.fiveg.refinement_power_w) << "  "
        << fmt6(s.cvbm.refinement_power_w) << "\n";
    out << "  overhead reduction, refinement phase: "
        << fmt6(s.overhead_reduction_refinement * 100.0) << " %\n";
    out << "  overhead reduction, incl. SSB burst:  "
        << fmt6(s.overhead_reduction_total * 100.0) << " %\n";
    out << "  refinement energy reduction:          "
        << fmt6(s.refinement_energy_reduction * 100.0) << " %\n";
    out << "  beamforming gain improvement:         " << fmt6(s.gain_improvement_percent)
        << " %\n";
    out << "  CVBM fallback rate:                   " << fmt6(s.fallback_rate * 100.0) << " %\n";
    return out.str();
}

} // namespace beamsim
