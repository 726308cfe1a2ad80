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
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace beamsim;
using test_helpers::rel_diff;

namespace {

const ArrayGeometry kTx{8, 8, 0.5};
const ArrayGeometry kRx{2, 2, 0.5};

double frobenius2(const ChannelRealization& ch) {
    double sum = 0.0;
    for (const auto& h : ch.matrix) {
        sum += std::norm(h);
    }
    return sum;
}

} // namespace

TEST_CASE("pathloss_inh_los_db: formula evaluation") {
    CHECK(rel_diff(pathloss_inh_los_db(1.0, 1.0e11), 72.4) < 1e-12);
    CHECK(rel_diff(pathloss_inh_los_db(10.0, 1.0e11), 89.7) < 1e-12);

    // doubling the distance costs 17.3 log10(2) dB
    const double slope = pathloss_inh_los_db(20.0, 1.0e11) - pathloss_inh_los_db(10.0, 1.0e11);
    CHECK(rel_diff(slope, 17.3 * std::log10(2.0)) < 1e-12);
    CHECK(slope == doctest::Approx(5.2078).epsilon(1e-4));

    // monotone in distance and carrier
    CHECK(pathloss_inh_los_db(15.0, 1.0e11) > pathloss_inh_los_db(10.0, 1.0e11));
    CHECK(pathloss_inh_los_db(10.0, 2.0e11) > pathloss_inh_los_db(10.0, 1.0e11));

    // validity floor below 1 m
    CHECK(pathloss_inh_los_db(0.2, 1.0e11) == pathloss_inh_los_db(1.0, 1.0e11));

    CHECK_THROWS_AS(pathloss_inh_los_db(0.0, 1.0e11), DomainError);
    CHECK_THROWS_AS(pathloss_inh_los_db(-4.0, 1.0e11), DomainError);
    CHECK_THROWS_AS(pathloss_inh_los_db(5.0, 0.0), DomainError);
}

TEST_CASE("los_channel: Frobenius norm matches the path gain") {
    const LinkBudget budget;
    test_helpers::DirectionSampler dirs(101, 1.4);
    for (int i = 0; i < 50; ++i) {
        const SphericalPoint mobile = dirs.next(1.0 + 0.3 * i);
        const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);
        const double expected =
            kTx.elements() * kRx.elements() * std::pow(10.0, -ch.pathloss_db / 10.0);
        CHECK(rel_diff(frobenius2(ch), expected) < 1e-9);
    }
}

TEST_CASE("los_channel: aligned beams recover the full link budget") {
    const LinkBudget budget;
    const SphericalPoint mobile{12.0, 0.6, -0.9};
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);

    const cvec tx = upa_response(kTx, mobile.theta_rad, mobile.phi_rad);
    const cvec rx = upa_response(kRx, 0.0, 0.0);
    const double p = rsrp_dbm(ch, tx, rx, budget.tx_power_dbm_max);
    const double expected = budget.tx_power_dbm_max +
                            10.0 * std::log10(kTx.elements() * kRx.elements()) - ch.pathloss_db;
    CHECK(rel_diff(p, expected) < 1e-9);
}

TEST_CASE("los_channel: boresight mobile at 10 m, default budget") {
    const LinkBudget budget;
    const SphericalPoint mobile{10.0, 0.0, 0.0};
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);
    const double p = rsrp_dbm(ch, upa_response(kTx, 0.0, 0.0), upa_response(kRx, 0.0, 0.0),
                              budget.tx_power_dbm_max);
    CHECK(p == doctest::Approx(-35.6176003469).epsilon(1e-9));
}

TEST_CASE("rsrp_dbm: null direction reports the floor") {
    const LinkBudget budget;
    const SphericalPoint mobile{10.0, 0.0, 0.0}; // boresight arrival/departure
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);

    // Orthogonal critically-sampled codeword: du = 2/8 in the horizontal
    // axis, aligned vertically.
    const cvec tx = upa_response(kTx, std::asin(0.25), 0.0);
    const double p = rsrp_dbm(ch, tx, upa_response(kRx, 0.0, 0.0), budget.tx_power_dbm_max);
    CHECK(p == kRsrpFloorDbm);
}

TEST_CASE("rsrp_dbm: halving the linear power drops exactly 3.0103 dB") {
    const LinkBudget budget;
    const SphericalPoint mobile{7.0, 0.4, 0.8};
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);
    const cvec tx = upa_response(kTx, mobile.theta_rad, mobile.phi_rad);
    const cvec rx = upa_response(kRx, 0.0, 0.0);

    const double half_db = 10.0 * std::log10(2.0);
    const double p1 = rsrp_dbm(ch, tx, rx, 30.0);
    const double p2 = rsrp_dbm(ch, tx, rx, 30.0 - half_db);
    CHECK(rel_diff(p1 - p2, half_db) < 1e-12);
    CHECK(p1 - p2 == doctest::Approx(3.0103).epsilon(1e-5));
}

TEST_CASE("rsrp_dbm: dimension mismatch") {
    const LinkBudget budget;
    const ChannelRealization ch = los_channel(kTx, kRx, SphericalPoint{5.0, 0.1, 0.1}, budget);
    const cvec bad_tx(16, {1.0, 0.0});
    const cvec rx = upa_response(kRx, 0.0, 0.0);
    CHECK_THROWS_AS(rsrp_dbm(ch, bad_tx, rx, 30.0), DimensionMismatch);
    const cvec tx = upa_response(kTx, 0.1, 0.1);
    const cvec bad_rx(3, {1.0, 0.0});
    CHECK_THROWS_AS(rsrp_dbm(ch, tx, bad_rx, 30.0), DimensionMismatch);
}

TEST_CASE("snr_and_rate: thermal noise floor and Shannon rate") {
    const LinkBudget budget; // 1 GHz, NF 7
    CHECK(rel_diff(noise_floor_dbm(budget), -77.0) < 1e-12);

    const SnrRate at_zero = snr_and_rate(-77.0, budget);
    CHECK(std::abs(at_zero.snr_db) < 1e-12);
    CHECK(rel_diff(at_zero.rate_bps, 1.0e9) < 1e-12); // log2(2) = 1

    const SnrRate deep_null = snr_and_rate(kRsrpFloorDbm, budget);
    CHECK(deep_null.rate_bps >= 0.0);
    CHECK(deep_null.rate_bps < 1e-3);

    // monotone in rsrp
    double prev = -1.0;
    for (double p = -120.0; p <= -20.0; p += 5.0) {
        const SnrRate sr = snr_and_rate(p, budget);
        CHECK(sr.rate_bps >= prev);
        prev = sr.rate_bps;
    }
}

TEST_CASE("energy conservation over a complete orthonormal codebook") {
    // Without oversampling the 64 normalized codewords form an orthonormal
    // basis, so the beamformed powers must add up to ||H^H v||^2.
    const LinkBudget budget;
    const Codebook cb = dft_codebook_upa(kTx, 1, 1);
    REQUIRE(cb.size() == 64);

    const SphericalPoint mobile{9.0, 0.8, 2.1};
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);
    const cvec v = upa_response(kRx, 0.0, 0.0); // matched combiner

    // row vector v^H H (normalized v)
    cvec vh(static_cast<std::size_t>(ch.n_tx), {0.0, 0.0});
    const double v_norm = std::sqrt(static_cast<double>(kRx.elements()));
    for (int j = 0; j < ch.n_tx; ++j) {
        for (int i = 0; i < ch.n_rx; ++i) {
            vh[static_cast<std::size_t>(j)] +=
                std::conj(v[static_cast<std::size_t>(i)] / v_norm) * ch.at(i, j);
        }
    }
    double target = 0.0;
    for (const auto& c : vh) {
        target += std::norm(c);
    }

    double sum = 0.0;
    const double w_norm = std::sqrt(static_cast<double>(kTx.elements()));
    for (const auto& e : cb.codewords) {
        std::complex<double> y{0.0, 0.0};
        for (int j = 0; j < ch.n_tx; ++j) {
            y += vh[static_cast<std::size_t>(j)] * e.beam.weights[static_cast<std::size_t>(j)] /
                 w_norm;
        }
        sum += std::norm(y);
    }
    CHECK(rel_diff(sum, target) < 1e-9);
}

TEST_CASE("power_control_dbm: boundary, slope and inverse") {
    const LinkBudget budget;

    // cap: target only reachable at (or above) max power
    CHECK(power_control_dbm(10.0, 0.0, budget, 256.0) == budget.tx_power_dbm_max);

    // floor
    CHECK(power_control_dbm(1.0, -200.0, budget, 256.0) == budget.tx_power_dbm_min);

    // slope: doubling the range costs 17.3 log10(2) dB while uncapped
    LinkBudget wide = budget;
    wide.tx_power_dbm_max = 200.0;
    wide.tx_power_dbm_min = -200.0;
    const double p1 = power_control_dbm(5.0, -50.0, wide, 256.0);
    const double p2 = power_control_dbm(10.0, -50.0, wide, 256.0);
    CHECK(rel_diff(p2 - p1, 17.3 * std::log10(2.0)) < 1e-9);

    // inverse of the aligned-link example: -35.6176 dBm at 10 m needs 30 dBm
    const double target = 30.0 + 10.0 * std::log10(256.0) - pathloss_inh_los_db(10.0, 1.0e11);
    CHECK(std::abs(power_control_dbm(10.0, target, budget, 256.0) - 30.0) < 1e-9);

    CHECK_THROWS_AS(power_control_dbm(0.0, -50.0, budget, 256.0), DomainError);
    CHECK_THROWS_AS(power_control_dbm(5.0, -50.0, budget, 0.0), DomainError);
}

TEST_CASE("power_control_dbm: uncapped closed loop hits the target exactly") {
    LinkBudget wide;
    wide.tx_power_dbm_max = 200.0;
    wide.tx_power_dbm_min = -200.0;

    const SphericalPoint mobile{14.0, 0.5, 0.3};
    const ChannelRealization ch = los_channel(kTx, kRx, mobile, wide);
    const cvec tx = upa_response(kTx, mobile.theta_rad, mobile.phi_rad);
    const cvec rx = upa_response(kRx, 0.0, 0.0);

    const double target = -42.0;
    const double gain = static_cast<double>(kTx.elements() * kRx.elements());
    const double p = power_control_dbm(mobile.r, target, wide, gain);
    CHECK(std::abs(rsrp_dbm(ch, tx, rx, p) - target) < 1e-9);
}

TEST_CASE("rsrp is non-increasing in distance for fixed beams") {
    const LinkBudget budget;
    double prev = 1e9;
    for (double d = 1.0; d <= 25.0; d += 0.5) {
        const SphericalPoint mobile{d, 0.3, 0.0};
        const ChannelRealization ch = los_channel(kTx, kRx, mobile, budget);
        const cvec tx = upa_response(kTx, mobile.theta_rad, mobile.phi_rad);
        const double p =
            rsrp_dbm(ch, tx, upa_response(kRx, 0.0, 0.0), budget.tx_power_dbm_max);
        CHECK(p <= prev + 1e-12);
        prev = p;
    }
}
