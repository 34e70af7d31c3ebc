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

#include <optional>
#include <ostream>
#include <vector>

#include "channel.hpp"
#include "metrics.hpp"

namespace gobsim
{
    // Either `positions` points drawn uniformly over the deployment area, or a regular
    // lattice over [lo, hi] with the given resolution.
    struct CoverageSpec
    {
        std::optional<int> positions = 1000;
        Vec2 lo{}, hi{};
        double resolution = 0.0; // m, used when positions is empty
        double frequency_ghz = 28.0;
        std::vector<int> elements; // empty = config sweep
    };

    struct CoverageRow
    {
        Vec2 position{};
        std::vector<double> rsrp; // dBm, one per element count
        double nbf_rsrp = kNegInf;
    };

    struct CoverageMap
    {
        std::vector<int> elements;
        std::vector<CoverageRow> rows;
    };

    inline std::vector<Vec2> coverage_positions(const ScenarioConfig &cfg, const CoverageSpec &spec)
    {
        std::vector<Vec2> out;
        if (spec.positions)
        {
            if (*spec.positions < 0)
                throw DomainError("coverage_map: position count must be >= 0");
            const DeploymentArea area(cfg);
            auto rng = make_stream(cfg.rng_seed, static_cast<std::uint32_t>(Stream::Coverage));
            for (int i = 0; i < *spec.positions; ++i)
                out.push_back(area.sample(rng));
            return out;
        }
        if (!(spec.resolution > 0.0) || !(spec.hi.x >= spec.lo.x) || !(spec.hi.y >= spec.lo.y))
            throw DomainError("coverage_map: lattice needs resolution > 0 and hi >= lo");
        const auto nx = static_cast<int>(std::floor((spec.hi.x - spec.lo.x) / spec.resolution + 1e-9)) + 1;
        const auto ny = static_cast<int>(std::floor((spec.hi.y - spec.lo.y) / spec.resolution + 1e-9)) + 1;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                out.push_back({spec.lo.x + i * spec.resolution, spec.lo.y + j * spec.resolution});
        return out;
    }

    // Best-beam RSRP over all sectors for every element count, plus the single-element
    // (no beamforming) baseline. Shadowing is off and LOS is the more likely state at each
    // distance unless the channel config forces one, so the field is deterministic.
    inline CoverageMap coverage_map(const ScenarioConfig &cfg, const CoverageSpec &spec)
    {
        validate(cfg);
        CoverageMap map;
        map.elements = spec.elements.empty() ? cfg.element_sweep : spec.elements;

        ScenarioConfig field = cfg;
        field.channel.shadowing = false;
        field.carrier_frequency = spec.frequency_ghz;

        std::vector<GridOfBeams> grids;
        for (int e : map.elements)
        {
            if (!cfg.antenna.array_shapes.count(e))
                throw DomainError("coverage_map: no array shape for " + std::to_string(e) + " elements");
            grids.push_back(build_grid(ArrayGeometry::from_config(cfg.antenna, e), cfg.antenna));
        }
        const auto nbf = build_grid(ArrayGeometry{1, 1, cfg.antenna.vertical_spacing, cfg.antenna.horizontal_spacing},
                                    cfg.antenna);
        const auto sectors = build_deployment(cfg);
        const auto sites = site_positions(cfg);
        const double p_re = re_power_dbm(cfg);

        for (Vec2 p : coverage_positions(cfg, spec))
        {
            CoverageRow row{p, std::vector<double>(grids.size(), kNegInf), kNegInf};
            std::vector<LinkState> links;
            for (std::size_t s = 0; s < sites.size(); ++s)
            {
                LinkState l;
                l.site_id = static_cast<int>(s);
                detail::set_geometry(l, sites[s], p, field);
                switch (cfg.channel.los_mode)
                {
                case LosMode::ForceLos:
                    l.los = true;
                    break;
                case LosMode::ForceNlos:
                    l.los = false;
                    break;
                default:
                    l.los = los_probability(l.d2d) >= 0.5;
                }
                l.last_update_position = p;
                links.push_back(l);
            }
            for (const auto &sec : sectors)
            {
                const auto &l = links[static_cast<std::size_t>(sec.site_id)];
                const auto dir = panel_direction(sec, p, cfg.bs_height, cfg.ue_height);
                const double budget = p_re - link_loss_db(l, field, spec.frequency_ghz);
                for (std::size_t g = 0; g < grids.size(); ++g)
                    for (double gain : grids[g].gains(dir.azimuth, dir.zenith))
                        row.rsrp[g] = std::max(row.rsrp[g], budget + gain);
                row.nbf_rsrp = std::max(row.nbf_rsrp, budget + nbf.gains(dir.azimuth, dir.zenith).front());
            }
            map.rows.push_back(std::move(row));
        }
        return map;
    }

    inline void write_coverage_csv(std::ostream &os, const CoverageMap &map)
    {
        using detail::fixed;
        os << "x_m,y_m";
        for (int e : map.elements)
            os << ",rsrp_e" << e << "_dbm";
        os << ",rsrp_nbf_dbm\n";
        for (const auto &r : map.rows)
        {
            os << fixed(r.position.x, 2) << ',' << fixed(r.position.y, 2);
            for (double v : r.rsrp)
                os << ',' << fixed(v, 2);
            os << ',' << fixed(r.nbf_rsrp, 2) << '\n';
        }
    }
}
