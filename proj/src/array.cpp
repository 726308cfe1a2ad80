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

#include <cmath>
#include <string>

namespace beamsim {

namespace {

void check_angles(double theta_rad, double phi_rad) {
    if (!(theta_rad >= 0.0) || theta_rad >= M_PI / 2.0) {
        throw DomainError("polar angle out of [0, pi/2): " + std::to_string(theta_rad));
    }
    // phi = -pi is accepted as the alias of +pi.
    if (!(std::abs(phi_rad) <= M_PI)) {
        throw DomainError("azimuth out of (-pi, pi]: " + std::to_string(phi_rad));
    }
}

} // namespace

cvec steering_vector_ula(int n, double spacing_wavelengths, double u) {
    if (std::abs(u) > 1.0) {
        throw DomainError("direction cosine out of [-1, 1]: " + std::to_string(u));
    }
    cvec a(static_cast<std::size_t>(n));
    const double step = 2.0 * M_PI * spacing_wavelengths * u;
    for (int k = 0; k < n; ++k) {
        a[static_cast<std::size_t>(k)] = std::polar(1.0, step * k);
    }
    return a;
}

cvec upa_response(const ArrayGeometry& geom, double theta_rad, double phi_rad) {
    check_angles(theta_rad, phi_rad);
    const double st = std::sin(theta_rad);
    const double u_h = st * std::cos(phi_rad);
    const double u_v = st * std::sin(phi_rad);
    const cvec a_h = steering_vector_ula(geom.n_h, geom.spacing_wavelengths, u_h);
    const cvec a_v = steering_vector_ula(geom.n_v, geom.spacing_wavelengths, u_v);

    cvec a(static_cast<std::size_t>(geom.elements()));
    for (int p = 0; p < geom.n_v; ++p) {
        for (int q = 0; q < geom.n_h; ++q) {
            a[static_cast<std::size_t>(p * geom.n_h + q)] =
                a_v[static_cast<std::size_t>(p)] * a_h[static_cast<std::size_t>(q)];
        }
    }
    return a;
}

BeamWeights steering_vector_upa(const ArrayGeometry& geom, double theta_rad, double phi_rad) {
    BeamWeights w;
    w.weights = upa_response(geom, theta_rad, phi_rad);
    w.pointing = Direction{theta_rad, phi_rad};
    return w;
}

Codebook dft_codebook_upa(const ArrayGeometry& geom, int q_h, int q_v) {
    if (q_h < 1 || q_v < 1) {
        throw DomainError("oversampling factors must be >= 1");
    }
    Codebook cb;
    cb.geometry = geom;
    cb.oversampling_h = q_h;
    cb.oversampling_v = q_v;

    const int m_h = geom.n_h * q_h;
    const int m_v = geom.n_v * q_v;
    cb.codewords.reserve(static_cast<std::size_t>(m_h) * static_cast<std::size_t>(m_v));

    for (int iv = 0; iv < m_v; ++iv) {
        const double u_v = -1.0 + 2.0 * iv / m_v;
        const cvec a_v = steering_vector_ula(geom.n_v, geom.spacing_wavelengths, u_v);
        for (int ih = 0; ih < m_h; ++ih) {
            const double u_h = -1.0 + 2.0 * ih / m_h;
            const cvec a_h = steering_vector_ula(geom.n_h, geom.spacing_wavelengths, u_h);

            Codebook::Entry entry;
            entry.u_h = u_h;
            entry.u_v = u_v;
            entry.selectable = u_h * u_h + u_v * u_v <= 1.0;
            entry.beam.weights.resize(static_cast<std::size_t>(geom.elements()));
            for (int p = 0; p < geom.n_v; ++p) {
                for (int q = 0; q < geom.n_h; ++q) {
                    entry.beam.weights[static_cast<std::size_t>(p * geom.n_h + q)] =
                        a_v[static_cast<std::size_t>(p)] * a_h[static_cast<std::size_t>(q)];
                }
            }
            if (entry.selectable) {
                const double sin_theta = std::min(1.0, std::sqrt(u_h * u_h + u_v * u_v));
                entry.beam.pointing =
                    Direction{std::asin(sin_theta),
                              (sin_theta == 0.0) ? 0.0 : std::atan2(u_v, u_h)};
            }
            cb.codewords.push_back(std::move(entry));
        }
    }
    return cb;
}

double beam_gain(const cvec& weights, const cvec& response) {
    if (weights.size() != response.size()) {
        throw DimensionMismatch("beam has " + std::to_string(weights.size()) +
                                " weights, response has " + std::to_string(response.size()));
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += std::conj(weights[i]) * response[i];
    }
    return std::norm(acc) / static_cast<double>(weights.size());
}

double array_gain(const BeamWeights& w, const ArrayGeometry& geom, double theta_rad,
                  double phi_rad) {
    return beam_gain(w.weights, upa_response(geom, theta_rad, phi_rad));
}

double half_power_beamwidth_deg(const ArrayGeometry& geom, ArrayAxis axis) {
    const int n = (axis == ArrayAxis::horizontal) ? geom.n_h : geom.n_v;
    if (n < 2) {
        throw DomainError("half-power beamwidth needs at least 2 elements along the axis");
    }
    const double phi = (axis == ArrayAxis::horizontal) ? 0.0 : M_PI / 2.0;
    const BeamWeights boresight = steering_vector_upa(geom, 0.0, 0.0);
    const double peak = static_cast<double>(geom.elements());

    auto above_half = [&](double theta) {
        return array_gain(boresight, geom, theta, phi) >= 0.5 * peak;
    };

    // The pattern is monotone on the main lobe; bracket with the first
    // null of the Dirichlet kernel, sin(theta) = 1/(n*spacing).
    const double u_null = std::min(1.0 - 1e-12, 1.0 / (n * geom.spacing_wavelengths));
    double lo = 0.0;
    double hi = std::asin(u_null);
    const double tol = 1e-6 * M_PI / 180.0; // 1e-6 degrees
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (above_half(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 2.0 * 0.5 * (lo + hi) * 180.0 / M_PI;
}

std::pair<std::size_t, double> best_codeword_genie(const Codebook& cb, double theta_rad,
                                                   double phi_rad) {
    if (cb.codewords.empty()) {
        throw EmptyCodebook("codebook has no codewords");
    }
    const cvec response = upa_response(cb.geometry, theta_rad, phi_rad);
    bool found = false;
    std::size_t best_index = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < cb.codewords.size(); ++i) {
        if (!cb.codewords[i].selectable) {
            continue;
        }
        const double g = beam_gain(cb.codewords[i].beam.weights, response);
        if (g > best_gain) {
            best_gain = g;
            best_index = i;
            found = true;
        }
    }
    if (!found) {
        throw EmptyCodebook("codebook has no selectable codewords");
    }
    return {best_index, best_gain};
}

} // namespace beamsim
