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

namespace beamsim {

/// RSRP reported for a null direction instead of -inf dBm.
inline constexpr double kRsrpFloorDbm = -300.0;

/// Carrier, bandwidth and RF front-end figures of the downlink.
struct LinkBudget {
    double carrier_hz = 1.0e11;
    double bandwidth_hz = 1.0e9;
    double tx_power_dbm_max = 30.0;
    double tx_power_dbm_min = -30.0; ///< power-control floor
    double noise_figure_db = 7.0;

    static constexpr double thermal_noise_dbm_per_hz = -174.0;
};

/// Deterministic rank-1 line-of-sight channel between the BS and mobile
/// arrays: H = sqrt(Nt*Nr*g_pl) * (a_r/sqrt(Nr)) * (a_t/sqrt(Nt))^H with
/// g_pl the linear path gain.
struct ChannelRealization {
    cvec matrix; ///< row-major, n_rx x n_tx
    int n_rx = 0;
    int n_tx = 0;
    SphericalPoint aod;
    SphericalPoint aoa;
    double pathloss_db = 0.0;

    const std::complex<double>& at(int rx, int tx) const {
        return matrix[static_cast<std::size_t>(rx * n_tx + tx)];
    }
};

/// 3GPP TR 38.901 InH-Office LoS path loss,
/// PL = 32.4 + 17.3*log10(d_m) + 20*log10(f_GHz) dB.
/// Distances below 1 m are clamped to the 1 m validity floor; non-positive
/// distance throws DomainError.
double pathloss_inh_los_db(double distance_m, double carrier_hz);

/// Builds the LoS channel toward `mobile` (departure direction). The
/// mobile's array boresight faces the BS, so the arrival direction is
/// broadside.
ChannelRealization los_channel(const ArrayGeometry& tx_geom, const ArrayGeometry& rx_geom,
                               const SphericalPoint& mobile, const LinkBudget& budget);

/// Received reference-signal power through (tx_beam, rx_combiner), both
/// normalized to unit power internally. Null overlap reports the
/// -300 dBm floor. Throws DimensionMismatch on size mismatch.
double rsrp_dbm(const ChannelRealization& channel, const cvec& tx_beam, const cvec& rx_combiner,
                double tx_power_dbm);

struct SnrRate {
    double snr_db = 0.0;
    double rate_bps = 0.0;
};

/// Thermal noise floor: -174 dBm/Hz + 10*log10(BW) + NF.
double noise_floor_dbm(const LinkBudget& budget);

/// SNR against the budget's noise floor and the Shannon rate
/// BW*log2(1 + snr).
SnrRate snr_and_rate(double rsrp_dbm_value, const LinkBudget& budget);

/// Minimal transmit power (dBm) reaching `target_rsrp_dbm` at the
/// estimated range given the predicted path loss and the combined linear
/// beamforming gain, clamped into [tx_power_dbm_min, tx_power_dbm_max].
double power_control_dbm(double estimated_range_m, double target_rsrp_dbm,
                         const LinkBudget& budget, double gain_linear);

} // namespace beamsim
