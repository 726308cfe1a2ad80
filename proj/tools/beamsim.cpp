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

#include "beamsim/channel.hpp"
#include "beamsim/config.hpp"
#include "beamsim/detections.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

beamsim::ExperimentConfig load_or_default(const std::string& path) {
    if (path.empty()) {
        return beamsim::ExperimentConfig{};
    }
    return beamsim::load_config(path);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw beamsim::IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw beamsim::IoError("write to '" + path + "' failed");
    }
}

int cmd_simulate(const std::string& cfg_path, const std::string& out_dir,
                 const std::string& trace_path) {
    const beamsim::ExperimentConfig cfg = load_or_default(cfg_path);

    std::cout << "# effective configuration\n" << beamsim::render_config(cfg) << "\n";

    std::vector<beamsim::BeamSession> trace;
    const beamsim::GridResult result =
        beamsim::run_grid_experiment(cfg, trace_path.empty() ? nullptr : &trace);

    std::filesystem::create_directories(out_dir);
    const auto dir = std::filesystem::path(out_dir);
    beamsim::emit_heatmap_csv(result.cells, (dir / "heatmap.csv").string());
    write_file((dir / "summary.txt").string(),
               beamsim::emit_summary(result.summary, beamsim::SummaryFormat::text));
    write_file((dir / "summary.json").string(),
               beamsim::emit_summary(result.summary, beamsim::SummaryFormat::json));

    if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) {
            throw beamsim::IoError("cannot open '" + trace_path + "' for writing");
        }
        for (const auto& session : trace) {
            out << beamsim::session_trace_json(session) << '\n';
        }
    }

    std::cout << beamsim::emit_summary(result.summary, beamsim::SummaryFormat::text);
    std::cout << "wrote " << result.cells.size() << " cells to " << (dir / "heatmap.csv").string()
              << "\n";
    return 0;
}

int cmd_pipeline(const std::string& detections_path, const std::string& cfg_path,
                 const std::string& estimates_path, bool as_json) {
    const beamsim::ExperimentConfig cfg = load_or_default(cfg_path);
    const beamsim::PipelineResult result = beamsim::run_detection_pipeline(detections_path, cfg);

    for (const auto& w : result.warnings) {
        std::cerr << "warning: " << w << "\n";
    }

    if (!estimates_path.empty()) {
        std::ofstream out(estimates_path, std::ios::binary);
        if (!out) {
            throw beamsim::IoError("cannot open '" + estimates_path + "' for writing");
        }
        for (const auto& loc : result.estimates) {
            nlohmann::json j;
            j["frame_id"] = loc.record.frame_id;
            j["estimate"] = {loc.estimate.x, loc.estimate.y, loc.estimate.z};
            j["r_m"] = loc.estimate_spherical.r;
            j["theta_deg"] = loc.estimate_spherical.theta_rad * 180.0 / M_PI;
            j["phi_deg"] = loc.estimate_spherical.phi_rad * 180.0 / M_PI;
            out << j.dump() << '\n';
        }
    }

    if (as_json) {
        nlohmann::json j;
        j["mobile_records"] = result.estimates.size();
        j["person_records"] = result.person_records;
        j["warnings"] = result.warning_count;
        if (result.has_stats) {
            j["mean_distance_error_cm"] = result.stats.mean_distance_cm;
            j["mean_angle_error_deg"] = result.stats.mean_angle_deg;
            j["evaluated_pairs"] = result.stats.count;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "localized " << result.estimates.size() << " mobile record(s), skipped "
                  << result.person_records << " person record(s), " << result.warning_count
                  << " warning(s)\n";
        if (result.has_stats) {
            std::printf("mean localization error over %zu record(s): distance %.6g cm, "
                        "angle %.6g deg\n",
                        result.stats.count, result.stats.mean_distance_cm,
                        result.stats.mean_angle_deg);
        } else {
            std::cout << "no ground truth present, localization error not evaluated\n";
        }
    }
    return 0;
}

int cmd_codebook_inspect(const std::string& cfg_path) {
    const beamsim::ExperimentConfig cfg = load_or_default(cfg_path);
    const beamsim::Codebook cb =
        beamsim::dft_codebook_upa(cfg.tx_array, cfg.oversampling_h, cfg.oversampling_v);

    std::size_t selectable = 0;
    for (const auto& e : cb.codewords) {
        selectable += e.selectable ? 1 : 0;
    }

    // Worst interior point of the lattice: half a step off a beam center
    // in both direction cosines, evaluated near boresight.
    const double u_h = cb.lattice_step_h() / 2.0;
    const double u_v = cb.lattice_step_v() / 2.0;
    const double sin_theta = std::sqrt(u_h * u_h + u_v * u_v);
    const auto [idx, crossover_gain] =
        beamsim::best_codeword_genie(cb, std::asin(sin_theta), std::atan2(u_v, u_h));
    (void)idx;
    const double peak = static_cast<double>(cfg.tx_array.elements());

    // Worst pointing error: dense sampling of the visible region against
    // the nearest selectable codeword direction. The lattice is uniform in
    // direction cosines, so the angular error grows toward grazing
    // directions; the inner figure covers the sector beam selection
    // actually serves.
    double worst_err_deg = 0.0;
    double worst_err_60_deg = 0.0;
    const double sin60_sq = 0.75;
    const int samples = 160;
    for (int a = 0; a < samples; ++a) {
        for (int b = 0; b < samples; ++b) {
            const double du = -1.0 + 2.0 * (a + 0.5) / samples;
            const double dv = -1.0 + 2.0 * (b + 0.5) / samples;
            const double norm2 = du * du + dv * dv;
            if (norm2 > 1.0) {
                continue;
            }
            const double dw = std::sqrt(1.0 - norm2);
            double best_dot = -1.0;
            for (const auto& e : cb.codewords) {
                if (!e.selectable) {
                    continue;
                }
                const double ew = std::sqrt(std::max(0.0, 1.0 - e.u_h * e.u_h - e.u_v * e.u_v));
                best_dot = std::max(best_dot, du * e.u_h + dv * e.u_v + dw * ew);
            }
            const double err = std::acos(std::clamp(best_dot, -1.0, 1.0)) * 180.0 / M_PI;
            worst_err_deg = std::max(worst_err_deg, err);
            if (norm2 <= sin60_sq) {
                worst_err_60_deg = std::max(worst_err_60_deg, err);
            }
        }
    }

    std::printf("codewords:                %zu (%zu selectable, %zu outside visible region)\n",
                cb.size(), selectable, cb.size() - selectable);
    std::printf("lattice step (u_h, u_v):  %.6g, %.6g\n", cb.lattice_step_h(),
                cb.lattice_step_v());
    std::printf("peak gain:                %.6g dB\n", 10.0 * std::log10(peak));
    std::printf("worst-case crossover:     %.6g dB (%.6g dB below peak)\n",
                10.0 * std::log10(crossover_gain),
                10.0 * std::log10(peak / crossover_gain));
    std::printf("worst pointing error:     %.3g deg (sampled over the visible region), "
                "%.3g deg within 60 deg of boresight\n",
                worst_err_deg, worst_err_60_deg);
    std::printf("HPBW horizontal:          %.6g deg\n",
                beamsim::half_power_beamwidth_deg(cfg.tx_array,
                                                  beamsim::ArrayAxis::horizontal));
    std::printf("HPBW vertical:            %.6g deg\n",
                beamsim::half_power_beamwidth_deg(cfg.tx_array, beamsim::ArrayAxis::vertical));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"link-level comparison of codebook-based and vision-aided beam management"};
    app.require_subcommand(1);

    std::string cfg_path, out_dir = "out", trace_path;
    bool print_defaults = false;
    auto* sim = app.add_subcommand("simulate", "run the grid experiment, write heatmap + summary");
    sim->add_option("--config", cfg_path, "configuration file (defaults used when omitted)");
    sim->add_option("--out", out_dir, "output directory")->capture_default_str();
    sim->add_option("--trace", trace_path, "write a per-session JSON-lines trace");
    sim->add_flag("--print-defaults", print_defaults, "print the default configuration and exit");

    std::string det_path, pipe_cfg, estimates_path;
    bool pipe_json = false;
    auto* pipe = app.add_subcommand("pipeline", "localize a detections file and report errors");
    pipe->add_option("--detections", det_path, "JSON-lines detections file")->required();
    pipe->add_option("--config", pipe_cfg, "configuration file (for the camera model)");
    pipe->add_option("--estimates", estimates_path, "write per-record estimates (JSON lines)");
    pipe->add_flag("--json", pipe_json, "machine-readable output");

    std::string cb_cfg;
    auto* cbcmd = app.add_subcommand("codebook", "codebook utilities");
    cbcmd->require_subcommand(1);
    auto* inspect = cbcmd->add_subcommand("inspect", "print codebook statistics");
    inspect->add_option("--config", cb_cfg, "configuration file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (print_defaults) {
                std::cout << beamsim::default_config_text();
                return 0;
            }
            return cmd_simulate(cfg_path, out_dir, trace_path);
        }
        if (pipe->parsed()) {
            return cmd_pipeline(det_path, pipe_cfg, estimates_path, pipe_json);
        }
        if (inspect->parsed()) {
            return cmd_codebook_inspect(cb_cfg);
        }
    } catch (const beamsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
