// SPDX-License-Identifier: Apache-2.0
//
// gobsim - grid-of-beams mobility simulator for 5G NR macro deployments
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

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

#include "config.hpp"

namespace gobsim
{
    using cplx = std::complex<double>;

    // Uniform planar array, element (m, n) = (row, col), stored row-major.
    struct ArrayGeometry
    {
        int rows = 1;
        int cols = 1;
        double vertical_spacing = 0.5;   // wavelengths
        double horizontal_spacing = 0.5; // wavelengths

        int total_elements() const { return rows * cols; }

        static ArrayGeometry from_config(const AntennaConfig &a, int elements)
        {
            const auto shape = a.array_shapes.at(elements);
            return {shape[0], shape[1], a.vertical_spacing, a.horizontal_spacing};
        }
    };

    // Parabolic element pattern; azimuth in [-180, 180], zenith in [0, 180] (90 = horizon).
    inline double element_gain(double azimuth, double zenith, const ElementPatternConfig &p = {})
    {
        if (!(azimuth >= -180.0 && azimuth <= 180.0) || !(zenith >= 0.0 && zenith <= 180.0))
            throw DomainError("element_gain: angle out of range (azimuth " + std::to_string(azimuth) + ", zenith " +
                              std::to_string(zenith) + ")");
        const double tv = (zenith - 90.0) / p.theta_3db_deg;
        const double th = azimuth / p.phi_3db_deg;
        const double a_v = -std::min(12.0 * tv * tv, p.side_lobe_v_db);
        const double a_h = -std::min(12.0 * th * th, p.max_attenuation_db);
        return p.max_gain_dbi - std::min(-(a_v + a_h), p.max_attenuation_db);
    }

    // Planar-array response toward (azimuth, zenith) in the panel frame.
    inline std::vector<cplx> steering_vector(const ArrayGeometry &g, double azimuth, double zenith)
    {
        const double az = deg2rad(azimuth), zen = deg2rad(zenith);
        const double kh = 2.0 * kPi * g.horizontal_spacing * std::sin(zen) * std::sin(az);
        const double kv = 2.0 * kPi * g.vertical_spacing * std::cos(zen);

        std::vector<cplx> col(static_cast<std::size_t>(g.cols));
        for (int n = 0; n < g.cols; ++n)
            col[n] = std::polar(1.0, kh * n);

        std::vector<cplx> v;
        v.reserve(static_cast<std::size_t>(g.total_elements()));
        for (int m = 0; m < g.rows; ++m)
        {
            const cplx row = std::polar(1.0, kv * m);
            for (int n = 0; n < g.cols; ++n)
                v.push_back(row * col[n]);
        }
        return v;
    }

    struct Beam
    {
        BeamId id{};
        double steer_azimuth = 0.0; // deg, panel frame
        double steer_zenith = 90.0; // deg
        std::vector<cplx> weights;  // unit norm, conj(steering)/sqrt(E)
    };

    // Matched beam toward a direction.
    inline Beam make_beam(BeamId id, const ArrayGeometry &g, double azimuth, double zenith)
    {
        auto w = steering_vector(g, azimuth, zenith);
        const double scale = 1.0 / std::sqrt(static_cast<double>(w.size()));
        for (auto &x : w)
            x = std::conj(x) * scale;
        return {id, azimuth, zenith, std::move(w)};
    }

    // |sum_i w_i a_i|^2 in dB; nulls are floored at -200 dB so the result stays finite.
    inline double array_gain_db(std::span<const cplx> weights, std::span<const cplx> steering)
    {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < weights.size(); ++i)
            acc += weights[i] * steering[i];
        return 10.0 * std::log10(std::max(std::norm(acc), 1e-20));
    }

    inline double beam_gain(const Beam &beam, const ArrayGeometry &g, double azimuth, double zenith,
                            const ElementPatternConfig &p = {})
    {
        const auto a = steering_vector(g, azimuth, zenith);
        return element_gain(azimuth, zenith, p) + array_gain_db(beam.weights, a);
    }

    struct GridOfBeams
    {
        ArrayGeometry geometry{};
        ElementPatternConfig pattern{};
        std::vector<Beam> beams;

        std::size_t size() const { return beams.size(); }

        // Gain of every beam toward one direction (dBi), indexed by beam id.
        std::vector<double> gains(double azimuth, double zenith) const
        {
            const auto a = steering_vector(geometry, azimuth, zenith);
            const double eg = element_gain(azimuth, zenith, pattern);
            std::vector<double> out;
            out.reserve(beams.size());
            for (const auto &b : beams)
                out.push_back(eg + array_gain_db(b.weights, a));
            return out;
        }
    };

    // Azimuth steering: cols x oversampling centres uniformly partitioning [-60, 60] degrees.
    // Zenith steering: one row at 90 + electrical tilt, otherwise centres uniform in cos(zenith)
    // over [zenith_min, zenith_max]. Beam id = zenith index * azimuth count + azimuth index.
    inline GridOfBeams build_grid(const ArrayGeometry &g, const AntennaConfig &cfg = {})
    {
        GridOfBeams grid{g, cfg.element, {}};
        if (g.total_elements() == 1)
        {
            grid.beams.push_back(make_beam(BeamId{0}, g, 0.0, 90.0));
            return grid;
        }

        const int n_az = g.cols * cfg.azimuth_oversampling;
        const int n_zen = cfg.zenith_beams > 0 ? cfg.zenith_beams : g.rows;

        std::vector<double> zeniths;
        if (n_zen == 1)
            zeniths.push_back(90.0 + cfg.electrical_tilt_deg);
        else
        {
            const double c0 = std::cos(deg2rad(cfg.zenith_min_deg));
            const double c1 = std::cos(deg2rad(cfg.zenith_max_deg));
            for (int i = 0; i < n_zen; ++i)
                zeniths.push_back(rad2deg(std::acos(c0 + (c1 - c0) * (i + 0.5) / n_zen)));
        }

        for (double zen : zeniths)
            for (int i = 0; i < n_az; ++i)
            {
                const double az = -60.0 + 120.0 * (i + 0.5) / n_az;
                grid.beams.push_back(make_beam(BeamId{static_cast<std::uint32_t>(grid.beams.size())}, g, az, zen));
            }
        return grid;
    }
}
