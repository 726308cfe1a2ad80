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

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace beamsim {

using cvec = std::vector<std::complex<double>>;

/// Planar array: n_h elements along the horizontal axis, n_v along the
/// vertical, isotropic elements on a uniform half-wavelength (by default)
/// grid. n_v = 1 gives a plain ULA.
struct ArrayGeometry {
    int n_h = 8;
    int n_v = 8;
    double spacing_wavelengths = 0.5;

    int elements() const { return n_h * n_v; }
};

/// Beam direction label (no range), same angle conventions as
/// SphericalPoint.
struct Direction {
    double theta_rad = 0.0;
    double phi_rad = 0.0;
};

/// Analog beamforming vector: one unit-modulus phase-shifter weight per
/// element. The 1/sqrt(N) power normalization happens inside the gain
/// computation, not here.
struct BeamWeights {
    cvec weights;
    std::optional<Direction> pointing;
};

/// DFT beam codebook on a uniform direction-cosine lattice. All
/// n_h*q_h*n_v*q_v lattice points are kept so codeword indices stay
/// stable; entries whose (u_h, u_v) falls outside the visible region are
/// flagged non-selectable and skipped by beam selection.
struct Codebook {
    struct Entry {
        BeamWeights beam;
        double u_h = 0.0;
        double u_v = 0.0;
        bool selectable = true;
    };

    std::vector<Entry> codewords;
    ArrayGeometry geometry;
    int oversampling_h = 1;
    int oversampling_v = 1;

    std::size_t size() const { return codewords.size(); }
    double lattice_step_h() const { return 2.0 / (geometry.n_h * oversampling_h); }
    double lattice_step_v() const { return 2.0 / (geometry.n_v * oversampling_v); }
};

enum class ArrayAxis { horizontal, vertical };

/// ULA steering vector: element k = exp(j*2*pi*spacing*k*u) for the
/// direction cosine u. Throws DomainError for |u| > 1.
cvec steering_vector_ula(int n, double spacing_wavelengths, double u);

/// UPA response toward (theta, phi): Kronecker product of the vertical
/// steering vector (u_v = sin(theta)sin(phi)) and the horizontal one
/// (u_h = sin(theta)cos(phi)); flat index p*n_h + q holds a_v[p]*a_h[q].
/// Throws DomainError for theta outside [0, pi/2) or |phi| > pi.
cvec upa_response(const ArrayGeometry& geom, double theta_rad, double phi_rad);

/// upa_response wrapped as a steerable beam with its pointing label.
BeamWeights steering_vector_upa(const ArrayGeometry& geom, double theta_rad, double phi_rad);

/// DFT codebook with per-axis oversampling q_h, q_v >= 1; lattice
/// u = -1 + 2*i/(n*q), i = 0..n*q-1 along each axis.
Codebook dft_codebook_upa(const ArrayGeometry& geom, int q_h, int q_v);

/// |<w/sqrt(N), a>|^2 against a precomputed array response; N when the
/// weights match the response, in [0, N] always.
double beam_gain(const cvec& weights, const cvec& response);

/// Linear power gain of beam w toward (theta, phi).
double array_gain(const BeamWeights& w, const ArrayGeometry& geom, double theta_rad,
                  double phi_rad);

/// Full width around boresight (degrees) where the gain stays above half
/// its peak, located by bisection on the array gain pattern to 1e-6 deg.
/// Throws DomainError when the axis has fewer than 2 elements.
double half_power_beamwidth_deg(const ArrayGeometry& geom, ArrayAxis axis);

/// Index and gain of the selectable codeword with the highest gain toward
/// (theta, phi); ties go to the lowest index. Throws EmptyCodebook.
std::pair<std::size_t, double> best_codeword_genie(const Codebook& cb, double theta_rad,
                                                   double phi_rad);

} // namespace beamsim
