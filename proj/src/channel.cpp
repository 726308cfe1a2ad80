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

#include "beamsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamsim {

double pathloss_inh_los_db(double distance_m, double carrier_hz) {
    if (!(distance_m > 0.0)) {
        throw DomainError("path loss needs a positive distance, got " +
                          std::to_string(distance_m));
    }
    if (!(carrier_hz > 0.0)) {
        throw DomainError("carrier frequency must be positive");
    }
    const double d = std::max(distance_m, 1.0);
    const double f_ghz = carrier_hz * 1e-9;
    return 32.4 + 17.3 * std::log10(d) + 20.0 * std::log10(f_ghz);
}

ChannelRealization los_channel(const ArrayGeometry& tx_geom, const ArrayGeometry& rx_geom,
                               const SphericalPoint& mobile, const LinkBudget& budget) {
    ChannelRealization ch;
    ch.n_tx = tx_geom.elements();
    ch.n_rx = rx_geom.elements();
    ch.aod = mobile;
    ch.aoa = SphericalPoint{mobile.r, 0.0, 0.0}; // mobile array faces the BS
    ch.pathloss_db = pathloss_inh_los_db(mobile.r, budget.carrier_hz);

    const cvec a_t = upa_response(tx_geom, mobile.theta_rad, mobile.phi_rad);
    const cvec a_r = upa_response(rx_geom, 0.0, 0.0);

    // H_ij = sqrt(g_pl) * a_r[i] * conj(a_t[j]); the Nt*Nr normalization
    // of the outer product cancels against the Frobenius target.
    const double amp = std::sqrt(std::pow(10.0, -ch.pathloss_db / 10.0));
    ch.matrix.resize(static_cast<std::size_t>(ch.n_rx) * static_cast<std::size_t>(ch.n_tx));
    for (int i = 0; i < ch.n_rx; ++i) {
        for (int j = 0; j < ch.n_tx; ++j) {
            ch.matrix[static_cast<std::size_t>(i * ch.n_tx + j)] =
                amp * a_r[static_cast<std::size_t>(i)] *
                std::conj(a_t[static_cast<std::size_t>(j)]);
        }
    }
    return ch;
}

double rsrp_dbm(const ChannelRealization& channel, const cvec& tx_beam, const cvec& rx_combiner,
                double tx_power_dbm) {
    if (static_cast<int>(tx_beam.size()) != channel.n_tx) {
        throw DimensionMismatch("tx beam length " + std::to_string(tx_beam.size()) +
                                " does not match " + std::to_string(channel.n_tx) +
                                " transmit antennas");
    }
    if (static_cast<int>(rx_combiner.size()) != channel.n_rx) {
        throw DimensionMismatch("rx combiner length " + std::to_string(rx_combiner.size()) +
                                " does not match " + std::to_string(channel.n_rx) +
                                " receive antennas");
    }
    double w_norm2 = 0.0;
    for (const auto& w : tx_beam) {
        w_norm2 += std::norm(w);
    }
    double v_norm2 = 0.0;
    for (const auto& v : rx_combiner) {
        v_norm2 += std::norm(v);
    }
    if (w_norm2 == 0.0 || v_norm2 == 0.0) {
        throw DomainError("beam and combiner must be non-zero");
    }

    std::complex<double> y{0.0, 0.0};
    for (int i = 0; i < channel.n_rx; ++i) {
        std::complex<double> row{0.0, 0.0};
        for (int j = 0; j < channel.n_tx; ++j) {
            row += channel.at(i, j) * tx_beam[static_cast<std::size_t>(j)];
        }
        y += std::conj(rx_combiner[static_cast<std::size_t>(i)]) * row;
    }
    const double p_lin = std::norm(y) / (w_norm2 * v_norm2);
    if (p_lin <= 0.0) {
        return kRsrpFloorDbm;
    }
    return std::max(kRsrpFloorDbm, tx_power_dbm + 10.0 * std::log10(p_lin));
}

double noise_floor_dbm(const LinkBudget& budget) {
    return LinkBudget::thermal_noise_dbm_per_hz + 10.0 * std::log10(budget.bandwidth_hz) +
           budget.noise_figure_db;
}

SnrRate snr_and_rate(double rsrp_dbm_value, const LinkBudget& budget) {
    SnrRate out;
    out.snr_db = rsrp_dbm_value - noise_floor_dbm(budget);
    const double snr_lin = std::pow(10.0, out.snr_db / 10.0);
    out.rate_bps = budget.bandwidth_hz * std::log1p(snr_lin) / std::log(2.0);
    return out;
}

double power_control_dbm(double estimated_range_m, double target_rsrp_dbm,
                         const LinkBudget& budget, double gain_linear) {
    if (!(estimated_range_m > 0.0)) {
        throw DomainError("power control needs a positive range estimate");
    }
    if (!(gain_linear > 0.0)) {
        throw DomainError("beamforming gain must be positive");
    }
    const double pl_db = pathloss_inh_los_db(estimated_range_m, budget.carrier_hz);
    const double required = target_rsrp_dbm - 10.0 * std::log10(gain_linear) + pl_db;
    return std::clamp(required, budget.tx_power_dbm_min, budget.tx_power_dbm_max);
}

} // namespace beamsim
