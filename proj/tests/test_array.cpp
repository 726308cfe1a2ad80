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

#include "beamsim/array.hpp"

#include "beamsim/errors.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace beamsim;
using test_helpers::dirichlet_ratio;
using test_helpers::rel_diff;

namespace {

constexpr std::complex<double> kJ{0.0, 1.0};

/// Independent closed-form gain of a DFT codeword toward a direction:
/// the per-axis Dirichlet ratios scaled by the element count.
double codeword_gain_closed_form(const Codebook& cb, const Codebook::Entry& e, double u_h,
                                 double u_v) {
    const auto& g = cb.geometry;
    return g.elements() * dirichlet_ratio(g.n_h, g.spacing_wavelengths, u_h - e.u_h) *
           dirichlet_ratio(g.n_v, g.spacing_wavelengths, u_v - e.u_v);
}

} // namespace

TEST_CASE("steering_vector_ula: broadside is the all-ones vector") {
    for (int n : {1, 4, 16}) {
        const cvec a = steering_vector_ula(n, 0.5, 0.0);
        REQUIRE(a.size() == static_cast<std::size_t>(n));
        for (const auto& e : a) {
            CHECK(std::abs(e - std::complex<double>{1.0, 0.0}) < 1e-15);
        }
    }
}

TEST_CASE("steering_vector_ula: quarter-turn phases at u = sin(30 deg)") {
    const cvec a = steering_vector_ula(4, 0.5, 0.5);
    const cvec expected{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(a[k] - expected[k]) < 1e-12);
    }
}

TEST_CASE("steering_vector_ula: element-wise complex exponential oracle") {
    const int n = 8;
    const double u = 0.25;
    const cvec a = steering_vector_ula(n, 0.5, u);
    for (int k = 0; k < n; ++k) {
        const std::complex<double> expected = std::exp(kJ * (2.0 * M_PI * 0.5 * k * u));
        CHECK(std::abs(a[static_cast<std::size_t>(k)] - expected) < 1e-12);
    }
}

TEST_CASE("steering_vector_ula: direction cosine out of range") {
    CHECK_THROWS_AS(steering_vector_ula(4, 0.5, 1.0001), DomainError);
    CHECK_THROWS_AS(steering_vector_ula(4, 0.5, -1.5), DomainError);
}

TEST_CASE("steering_vector_upa: boresight, Kronecker oracle and unit modulus") {
    const ArrayGeometry geom{8, 8, 0.5};

    const BeamWeights boresight = steering_vector_upa(geom, 0.0, 0.0);
    REQUIRE(boresight.weights.size() == 64);
    for (const auto& w : boresight.weights) {
        CHECK(std::abs(w - std::complex<double>{1.0, 0.0}) < 1e-15);
    }

    // Independent oracle: the flat element (p, q) must carry the phase of
    // the full 2D exponential exp(j 2 pi d (p u_v + q u_h)).
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> theta(0.0, 1.5), phi(-M_PI, M_PI);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = theta(rng), f = phi(rng);
        const BeamWeights w = steering_vector_upa(geom, t, f);
        const double u_h = std::sin(t) * std::cos(f);
        const double u_v = std::sin(t) * std::sin(f);
        for (int p = 0; p < geom.n_v; ++p) {
            for (int q = 0; q < geom.n_h; ++q) {
                const std::complex<double> expected =
                    std::exp(kJ * (2.0 * M_PI * 0.5 * (p * u_v + q * u_h)));
                const auto got = w.weights[static_cast<std::size_t>(p * geom.n_h + q)];
                CHECK(std::abs(got - expected) < 1e-12);
                CHECK(std::abs(std::abs(got) - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("steering_vector_upa: 2x2 hand expansion") {
    // u_h = 0.5, u_v = 0 -> a_h = (1, j), a_v = (1, 1); row-major
    // (v outer, h inner) flattening gives (1, j, 1, j).
    const ArrayGeometry geom{2, 2, 0.5};
    const BeamWeights w = steering_vector_upa(geom, M_PI / 6.0, 0.0); // sin = 0.5
    const cvec expected{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    REQUIRE(w.weights.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(w.weights[k] - expected[k]) < 1e-12);
    }
}

TEST_CASE("steering_vector_upa: rejects out-of-range angles") {
    const ArrayGeometry geom{4, 4, 0.5};
    CHECK_THROWS_AS(steering_vector_upa(geom, -0.1, 0.0), DomainError);
    CHECK_THROWS_AS(steering_vector_upa(geom, M_PI / 2.0, 0.0), DomainError);
    CHECK_THROWS_AS(steering_vector_upa(geom, 0.3, 3.3), DomainError);
}

TEST_CASE("dft_codebook_upa: cardinality") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    CHECK(cb.size() == 256); // the 8-bit codebook
    CHECK(cb.lattice_step_h() == doctest::Approx(0.125));

    const Codebook trivial = dft_codebook_upa(ArrayGeometry{1, 1, 0.5}, 1, 1);
    REQUIRE(trivial.size() == 1);
    REQUIRE(trivial.codewords[0].beam.weights.size() == 1);
    CHECK(std::abs(trivial.codewords[0].beam.weights[0] - std::complex<double>{1.0, 0.0}) <
          1e-15);
}

TEST_CASE("dft_codebook_upa: critically sampled codewords are orthogonal") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{4, 1, 0.5}, 1, 1);
    REQUIRE(cb.size() == 4);
    for (std::size_t i = 0; i < cb.size(); ++i) {
        for (std::size_t j = i + 1; j < cb.size(); ++j) {
            std::complex<double> dot{0.0, 0.0};
            for (std::size_t k = 0; k < 4; ++k) {
                dot += std::conj(cb.codewords[i].beam.weights[k]) *
                       cb.codewords[j].beam.weights[k];
            }
            CHECK(std::abs(dot) < 1e-9);
        }
    }
}

TEST_CASE("dft_codebook_upa: unit modulus and distinct codewords") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    for (const auto& e : cb.codewords) {
        for (const auto& w : e.beam.weights) {
            CHECK(std::abs(std::abs(w) - 1.0) < 1e-12);
        }
    }
    // Distinctness via the lattice: no two entries share (u_h, u_v).
    for (std::size_t i = 0; i < cb.size(); ++i) {
        for (std::size_t j = i + 1; j < cb.size(); ++j) {
            CHECK((cb.codewords[i].u_h != cb.codewords[j].u_h ||
                   cb.codewords[i].u_v != cb.codewords[j].u_v));
        }
    }
}

TEST_CASE("array_gain: coherent combining at alignment") {
    const ArrayGeometry geom{8, 8, 0.5};
    const BeamWeights w = steering_vector_upa(geom, 0.7, 1.1);
    const double g = array_gain(w, geom, 0.7, 1.1);
    CHECK(rel_diff(g, 64.0) < 1e-12);
    CHECK(10.0 * std::log10(g) == doctest::Approx(18.0618).epsilon(1e-4));
}

TEST_CASE("array_gain: orthogonal DFT direction is a null") {
    // Adjacent critically-sampled DFT beams (du = 2/n) are orthogonal.
    const ArrayGeometry ula{8, 1, 0.5};
    const BeamWeights w = steering_vector_upa(ula, 0.0, 0.0);
    const double g = array_gain(w, ula, std::asin(0.25), 0.0);
    CHECK(g < 1e-9);
}

TEST_CASE("array_gain: half-grid-step offset matches the Dirichlet closed form") {
    const ArrayGeometry ula{8, 1, 0.5};
    const BeamWeights w = steering_vector_upa(ula, 0.0, 0.0);
    const double g = array_gain(w, ula, std::asin(0.0625), 0.0);
    const double expected_ratio = dirichlet_ratio(8, 0.5, 0.0625);
    CHECK(rel_diff(g / 8.0, expected_ratio) < 1e-12);
    CHECK(g / 8.0 == doctest::Approx(0.81).epsilon(0.005));
}

TEST_CASE("array_gain: bounded by element count for arbitrary codewords") {
    const ArrayGeometry geom{8, 8, 0.5};
    const Codebook cb = dft_codebook_upa(geom, 2, 2);
    test_helpers::DirectionSampler dirs(17);
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<std::size_t> pick(0, cb.size() - 1);
    for (int i = 0; i < 500; ++i) {
        const SphericalPoint d = dirs.next();
        const double g =
            array_gain(cb.codewords[pick(rng)].beam, geom, d.theta_rad, d.phi_rad);
        CHECK(g >= 0.0);
        CHECK(g <= 64.0 + 1e-9);
    }
}

TEST_CASE("half_power_beamwidth: reference widths") {
    CHECK(half_power_beamwidth_deg(ArrayGeometry{32, 32, 0.5}, ArrayAxis::horizontal) ==
          doctest::Approx(3.174114).epsilon(1e-4));
    CHECK(half_power_beamwidth_deg(ArrayGeometry{8, 8, 0.5}, ArrayAxis::horizontal) ==
          doctest::Approx(12.802526).epsilon(1e-4));
    // n = 2 has the analytic half-power point cos^2(pi u / 2) = 1/2 at
    // u = 1/2, so the full width is exactly 60 degrees.
    CHECK(half_power_beamwidth_deg(ArrayGeometry{2, 1, 0.5}, ArrayAxis::horizontal) ==
          doctest::Approx(60.0).epsilon(1e-6));
    CHECK_THROWS_AS(half_power_beamwidth_deg(ArrayGeometry{1, 8, 0.5}, ArrayAxis::horizontal),
                    DomainError);
}

TEST_CASE("half_power_beamwidth: agrees with an independent bisection oracle") {
    for (int n : {4, 8, 16, 32}) {
        // Oracle: bisect the closed-form Dirichlet ratio in u, then convert.
        double lo = 0.0, hi = 2.0 / n;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (dirichlet_ratio(n, 0.5, mid) >= 0.5) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        const double oracle_deg = 2.0 * std::asin(0.5 * (lo + hi)) * 180.0 / M_PI;
        const double got =
            half_power_beamwidth_deg(ArrayGeometry{n, 1, 0.5}, ArrayAxis::horizontal);
        CHECK(std::abs(got - oracle_deg) < 1e-5);

        // Both axes follow their own element count.
        const double vertical =
            half_power_beamwidth_deg(ArrayGeometry{2, n, 0.5}, ArrayAxis::vertical);
        CHECK(std::abs(vertical - oracle_deg) < 1e-5);
    }
}

TEST_CASE("best_codeword_genie: on-lattice target hits its codeword exactly") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    // Entry with u_h = 0.125, u_v = 0: iv = 8 (u_v = 0), ih = 9.
    const std::size_t expected_index = 8 * 16 + 9;
    REQUIRE(cb.codewords[expected_index].u_h == doctest::Approx(0.125));
    REQUIRE(cb.codewords[expected_index].u_v == doctest::Approx(0.0));

    const auto [index, gain] = best_codeword_genie(cb, std::asin(0.125), 0.0);
    CHECK(index == expected_index);
    CHECK(rel_diff(gain, 64.0) < 1e-9);
}

TEST_CASE("best_codeword_genie: midway target lands on the crossover gain") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    const double u_mid = 0.0625; // halfway between lattice points 0 and 0.125
    const auto [index, gain] = best_codeword_genie(cb, std::asin(u_mid), 0.0);

    // Either neighbor is acceptable; the gain must match the exhaustive
    // scan and the analytic single-axis crossover value.
    CHECK((cb.codewords[index].u_h == doctest::Approx(0.0) ||
           cb.codewords[index].u_h == doctest::Approx(0.125)));
    CHECK(cb.codewords[index].u_v == doctest::Approx(0.0));

    double best = 0.0;
    for (const auto& e : cb.codewords) {
        if (e.selectable) {
            best = std::max(best, codeword_gain_closed_form(cb, e, u_mid, 0.0));
        }
    }
    CHECK(rel_diff(gain, best) < 1e-9);
    CHECK(rel_diff(gain, 64.0 * dirichlet_ratio(8, 0.5, 0.0625)) < 1e-9);
}

TEST_CASE("best_codeword_genie: argmax property against the closed-form scan") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    test_helpers::DirectionSampler dirs(23, 1.45);
    for (int i = 0; i < 10000; ++i) {
        const SphericalPoint d = dirs.next();
        const double u_h = std::sin(d.theta_rad) * std::cos(d.phi_rad);
        const double u_v = std::sin(d.theta_rad) * std::sin(d.phi_rad);
        const auto [index, gain] = best_codeword_genie(cb, d.theta_rad, d.phi_rad);

        double best = 0.0;
        for (const auto& e : cb.codewords) {
            if (e.selectable) {
                best = std::max(best, codeword_gain_closed_form(cb, e, u_h, u_v));
            }
        }
        CHECK(rel_diff(gain, codeword_gain_closed_form(cb, cb.codewords[index], u_h, u_v)) <
              1e-9);
        CHECK(gain >= best - 1e-9 * best);
    }
}

TEST_CASE("best_codeword_genie: quantization never falls below the lattice crossover") {
    const Codebook cb = dft_codebook_upa(ArrayGeometry{8, 8, 0.5}, 2, 2);
    // Analytic worst case: half a lattice step off in both cosines. Valid
    // away from the visible-region edge where all four neighbors exist.
    const double floor_gain = 64.0 *
                              dirichlet_ratio(8, 0.5, cb.lattice_step_h() / 2.0) *
                              dirichlet_ratio(8, 0.5, cb.lattice_step_v() / 2.0);
    test_helpers::DirectionSampler dirs(29, M_PI / 3.0); // theta <= 60 deg
    for (int i = 0; i < 1000; ++i) {
        const SphericalPoint d = dirs.next();
        const auto [index, gain] = best_codeword_genie(cb, d.theta_rad, d.phi_rad);
        (void)index;
        CHECK(gain >= floor_gain - 1e-9);
    }
    CHECK(floor_gain == doctest::Approx(42.3206).epsilon(1e-4));
}

TEST_CASE("best_codeword_genie: empty codebook") {
    Codebook cb;
    CHECK_THROWS_AS(best_codeword_genie(cb, 0.1, 0.1), EmptyCodebook);
}
