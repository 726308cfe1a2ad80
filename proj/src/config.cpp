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

#include "beamsim/config.hpp"

#include "beamsim/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

namespace beamsim {

namespace {

std::string trim(std::string_view sv) {
    const auto begin = sv.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = sv.find_last_not_of(" \t\r");
    return std::string(sv.substr(begin, end - begin + 1));
}

struct ParseContext {
    std::string origin;
    int line = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
    }
};

double to_double(const std::string& value, const std::string& key, const ParseContext& ctx) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            ctx.fail("trailing characters in value '" + value + "' for key '" + key + "'");
        }
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        ctx.fail("value '" + value + "' for key '" + key + "' is not a number");
    }
}

int to_int(const std::string& value, const std::string& key, const ParseContext& ctx) {
    const double v = to_double(value, key, ctx);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
        ctx.fail("value '" + value + "' for key '" + key + "' is not an integer");
    }
    return i;
}

std::uint64_t to_u64(const std::string& value, const std::string& key, const ParseContext& ctx) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) {
            ctx.fail("trailing characters in value '" + value + "' for key '" + key + "'");
        }
        return static_cast<std::uint64_t>(v);
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        ctx.fail("value '" + value + "' for key '" + key + "' is not an unsigned integer");
    }
}

using Setter = std::function<void(ExperimentConfig&, const std::string& value,
                                  const std::string& key, const ParseContext&)>;

#define SET_D(field)                                                                              \
    [](ExperimentConfig& c, const std::string& v, const std::string& k, const ParseContext& x) {  \
        c.field = to_double(v, k, x);                                                             \
    }
#define SET_I(field)                                                                              \
    [](ExperimentConfig& c, const std::string& v, const std::string& k, const ParseContext& x) {  \
        c.field = to_int(v, k, x);                                                                \
    }

const std::map<std::string, std::map<std::string, Setter>>& key_table() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"experiment",
         {
             {"area_width_m", SET_D(area_width_m)},
             {"area_depth_m", SET_D(area_depth_m)},
             {"grid_resolution", SET_I(grid_resolution)},
             {"seed",
              [](ExperimentConfig& c, const std::string& v, const std::string& k,
                 const ParseContext& x) { c.seed = to_u64(v, k, x); }},
             {"bs_height_m", SET_D(bs_height_m)},
         }},
        {"array",
         {
             {"tx_n_h", SET_I(tx_array.n_h)},
             {"tx_n_v", SET_I(tx_array.n_v)},
             {"rx_n_h", SET_I(rx_array.n_h)},
             {"rx_n_v", SET_I(rx_array.n_v)},
             {"spacing_wavelengths",
              [](ExperimentConfig& c, const std::string& v, const std::string& k,
                 const ParseContext& x) {
                  c.tx_array.spacing_wavelengths = to_double(v, k, x);
                  c.rx_array.spacing_wavelengths = c.tx_array.spacing_wavelengths;
              }},
             {"oversampling_h", SET_I(oversampling_h)},
             {"oversampling_v", SET_I(oversampling_v)},
         }},
        {"link",
         {
             {"carrier_hz", SET_D(link.carrier_hz)},
             {"bandwidth_hz", SET_D(link.bandwidth_hz)},
             {"tx_power_dbm_max", SET_D(link.tx_power_dbm_max)},
             {"tx_power_dbm_min", SET_D(link.tx_power_dbm_min)},
             {"noise_figure_db", SET_D(link.noise_figure_db)},
         }},
        {"ssb",
         {
             {"n_az", SET_I(ssb.n_az)},
             {"n_el", SET_I(ssb.n_el)},
             {"az_span_deg", SET_D(ssb.az_span_deg)},
             {"el_span_deg", SET_D(ssb.el_span_deg)},
             {"burst_ms", SET_D(ssb.burst_ms)},
             {"period_ms", SET_D(ssb.period_ms)},
         }},
        {"protocol",
         {
             {"csi_rs_period_ms", SET_D(protocol.csi_rs_period_ms)},
             {"csi_rs_beams_per_round", SET_I(protocol.csi_rs_beams_per_round)},
             {"refinement_ms", SET_D(protocol.refinement_ms)},
             {"cvbm_inference_ms", SET_D(protocol.cvbm_inference_ms)},
             {"power_5gbm_w", SET_D(protocol.power_5gbm_w)},
             {"power_cvbm_w", SET_D(protocol.power_cvbm_w)},
         }},
        {"noise",
         {
             {"angle_error_std_deg", SET_D(noise.angle_error_std_deg)},
             {"distance_error_std_cm", SET_D(noise.distance_error_std_cm)},
             {"detection_success_prob", SET_D(noise.detection_success_prob)},
         }},
        {"camera",
         {
             {"focal_length_px", SET_D(camera.focal_length_px)},
             {"cx_px", SET_D(camera.cx_px)},
             {"cy_px", SET_D(camera.cy_px)},
             {"image_width_px", SET_D(camera.image_width_px)},
             {"image_height_px", SET_D(camera.image_height_px)},
         }},
    };
    return table;
}

#undef SET_D
#undef SET_I

void require(bool ok, const std::string& invariant) {
    if (!ok) {
        throw ValidationError("config invariant violated: " + invariant);
    }
}

} // namespace

void ExperimentConfig::validate() const {
    require(area_width_m > 0.0 && area_depth_m > 0.0, "area dimensions must be positive");
    require(grid_resolution >= 2, "grid_resolution must be >= 2");
    require(tx_array.n_h >= 1 && tx_array.n_v >= 1, "tx array needs at least 1x1 elements");
    require(rx_array.n_h >= 1 && rx_array.n_v >= 1, "rx array needs at least 1x1 elements");
    require(tx_array.spacing_wavelengths > 0.0, "element spacing must be positive");
    require(oversampling_h >= 1 && oversampling_v >= 1, "oversampling factors must be >= 1");
    require(link.carrier_hz > 0.0, "carrier_hz must be positive");
    require(link.bandwidth_hz > 0.0, "bandwidth_hz must be positive");
    require(std::isfinite(link.tx_power_dbm_max), "tx_power_dbm_max must be finite");
    require(link.tx_power_dbm_min <= link.tx_power_dbm_max,
            "tx_power_dbm_min must not exceed tx_power_dbm_max");
    require(ssb.n_az >= 1 && ssb.n_el >= 1, "SSB grid needs at least 1x1 beams");
    require(ssb.n_az * ssb.n_el <= 64, "SSB grid must not exceed 64 beams");
    require(ssb.az_span_deg > 0.0 && ssb.el_span_deg > 0.0, "SSB spans must be positive");
    require(ssb.burst_ms > 0.0 && ssb.period_ms > 0.0, "SSB timing must be positive");
    require(protocol.csi_rs_period_ms > 0.0 && protocol.csi_rs_beams_per_round > 0 &&
                protocol.refinement_ms > 0.0 && protocol.cvbm_inference_ms > 0.0 &&
                protocol.power_5gbm_w > 0.0 && protocol.power_cvbm_w > 0.0,
            "protocol timing and power figures must be positive");
    require(noise.angle_error_std_deg >= 0.0 && noise.distance_error_std_cm >= 0.0,
            "noise standard deviations must be non-negative");
    require(noise.detection_success_prob >= 0.0 && noise.detection_success_prob <= 1.0,
            "detection_success_prob must lie in [0, 1]");
    require(camera.focal_length_px > 0.0, "focal_length_px must be positive");
    require(camera.image_width_px > 0.0 && camera.image_height_px > 0.0,
            "image dimensions must be positive");
    require(camera.cx_px >= 0.0 && camera.cx_px <= camera.image_width_px,
            "principal point cx must lie within the image width");
    require(camera.cy_px >= 0.0 && camera.cy_px <= camera.image_height_px,
            "principal point cy must lie within the image height");
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    ExperimentConfig cfg;
    ParseContext ctx{origin, 0};
    std::string section;
    std::string line;

    while (std::getline(in, line)) {
        ++ctx.line;
        if (const auto hash = line.find_first_of("#;"); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']') {
                ctx.fail("unterminated section header '" + text + "'");
            }
            section = trim(std::string_view(text).substr(1, text.size() - 2));
            if (key_table().find(section) == key_table().end()) {
                ctx.fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            ctx.fail("expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        if (section.empty()) {
            ctx.fail("key '" + key + "' appears before any [section] header");
        }
        if (key.empty()) {
            ctx.fail("empty key");
        }
        if (value.empty()) {
            ctx.fail("empty value for key '" + key + "'");
        }
        const auto& keys = key_table().at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) {
            ctx.fail("unknown key '" + key + "' in section [" + section + "]");
        }
        it->second(cfg, value, key, ctx);
    }

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    return parse_config(in, path);
}

std::string render_config(const ExperimentConfig& cfg) {
    auto num = [](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "# beamsim experiment configuration\n";
    out << "[experiment]\n";
    out << "area_width_m = " << num(cfg.area_width_m) << "\n";
    out << "area_depth_m = " << num(cfg.area_depth_m) << "\n";
    out << "grid_resolution = " << cfg.grid_resolution << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "bs_height_m = " << num(cfg.bs_height_m) << "\n";
    out << "\n[array]\n";
    out << "tx_n_h = " << cfg.tx_array.n_h << "\n";
    out << "tx_n_v = " << cfg.tx_array.n_v << "\n";
    out << "rx_n_h = " << cfg.rx_array.n_h << "\n";
    out << "rx_n_v = " << cfg.rx_array.n_v << "\n";
    out << "spacing_wavelengths = " << num(cfg.tx_array.spacing_wavelengths) << "\n";
    out << "oversampling_h = " << cfg.oversampling_h << "\n";
    out << "oversampling_v = " << cfg.oversampling_v << "\n";
    out << "\n[link]\n";
    out << "carrier_hz = " << num(cfg.link.carrier_hz) << "\n";
    out << "bandwidth_hz = " << num(cfg.link.bandwidth_hz) << "\n";
    out << "tx_power_dbm_max = " << num(cfg.link.tx_power_dbm_max) << "\n";
    out << "tx_power_dbm_min = " << num(cfg.link.tx_power_dbm_min) << "\n";
    out << "noise_figure_db = " << num(cfg.link.noise_figure_db) << "\n";
    out << "\n[ssb]\n";
    out << "n_az = " << cfg.ssb.n_az << "\n";
    out << "n_el = " << cfg.ssb.n_el << "\n";
    out << "az_span_deg = " << num(cfg.ssb.az_span_deg) << "\n";
    out << "el_span_deg = " << num(cfg.ssb.el_span_deg) << "\n";
    out << "burst_ms = " << num(cfg.ssb.burst_ms) << "\n";
    out << "period_ms = " << num(cfg.ssb.period_ms) << "\n";
    out << "\n[protocol]\n";
    out << "csi_rs_period_ms = " << num(cfg.protocol.csi_rs_period_ms) << "\n";
    out << "csi_rs_beams_per_round = " << cfg.protocol.csi_rs_beams_per_round << "\n";
    out << "refinement_ms = " << num(cfg.protocol.refinement_ms) << "\n";
    out << "cvbm_inference_ms = " << num(cfg.protocol.cvbm_inference_ms) << "\n";
    out << "power_5gbm_w = " << num(cfg.protocol.power_5gbm_w) << "\n";
    out << "power_cvbm_w = " << num(cfg.protocol.power_cvbm_w) << "\n";
    out << "\n[noise]\n";
    out << "angle_error_std_deg = " << num(cfg.noise.angle_error_std_deg) << "\n";
    out << "distance_error_std_cm = " << num(cfg.noise.distance_error_std_cm) << "\n";
    out << "detection_success_prob = " << num(cfg.noise.detection_success_prob) << "\n";
    out << "\n[camera]\n";
    out << "focal_length_px = " << num(cfg.camera.focal_length_px) << "\n";
    out << "cx_px = " << num(cfg.camera.cx_px) << "\n";
    out << "cy_px = " << num(cfg.camera.cy_px) << "\n";
    out << "image_width_px = " << num(cfg.camera.image_width_px) << "\n";
    out << "image_height_px = " << num(cfg.camera.image_height_px) << "\n";
    return out.str();
}

std::string default_config_text() { return render_config(ExperimentConfig{}); }

} // namespace beamsim
