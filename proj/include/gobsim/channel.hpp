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

#include <vector>

#include "antenna.hpp"
#include "deployment.hpp"

namespace gobsim
{
    // Urban-macro pathloss (dB), sub-breakpoint LOS branch. d3d in m, fc in GHz.
    inline double pathloss(double d3d, double fc, bool los, double ue_height)
    {
        if (!(d3d >= 1.0))
            throw DomainError("pathloss: d3d must be >= 1 m");
        if (!(fc > 0.0))
            throw DomainError("pathloss: carrier frequency must be > 0");
        const double pl_los = 28.0 + 22.0 * std::log10(d3d) + 20.0 * std::log10(fc);
        if (los)
            return pl_los;
        const double pl_nlos = 13.54 + 39.08 * std::log10(d3d) + 20.0 * std::log10(fc) - 0.6 * (ue_height - 1.5);
        return std::max(pl_los, pl_nlos);
    }

    inline double los_probability(double d2d)
    {
        if (d2d <= 18.0)
            return 1.0;
        return 18.0 / d2d + std::exp(-d2d / 63.0) * (1.0 - 18.0 / d2d);
    }

    inline double penetration_loss(bool indoor, double depth, const ChannelConfig &ch = {})
    {
        if (!(depth >= 0.0))
            throw DomainError("penetration_loss: depth must be >= 0");
        return indoor ? ch.wall_loss_db + ch.depth_loss_db_per_m * depth : 0.0;
    }

    // Transmit power per resource element (dBm).
    inline double re_power_dbm(double tx_power_dbm, int resource_blocks)
    {
        return tx_power_dbm - 10.0 * std::log10(12.0 * resource_blocks);
    }

    inline double re_power_dbm(const ScenarioConfig &cfg)
    {
        return re_power_dbm(cfg.bs_tx_power, resource_blocks(cfg.bandwidth, cfg.subcarrier_spacing));
    }

    // Thermal noise per resource element (dBm).
    inline double re_noise_dbm(const ScenarioConfig &cfg)
    {
        return -174.0 + 10.0 * std::log10(cfg.subcarrier_spacing * 1e3) + cfg.channel.noise_figure_db;
    }

    // Direction of a ground point seen from a sector panel, in the (possibly tilted) panel frame.
    struct Direction
    {
        double azimuth = 0.0; // deg, [-180, 180]
        double zenith = 90.0; // deg, [0, 180]
    };

    inline Direction panel_direction(const SectorSite &s, Vec2 p, double bs_height, double ue_height)
    {
        const Vec2 d = p - s.position;
        const double b = deg2rad(s.bearing);
        // sector frame: x along bearing, y to the left, z up
        const double xs = d.x * std::cos(b) + d.y * std::sin(b);
        const double ys = -d.x * std::sin(b) + d.y * std::cos(b);
        const double zs = ue_height - bs_height;
        const double t = deg2rad(s.downtilt);
        const double xp = xs * std::cos(t) - zs * std::sin(t);
        const double zp = xs * std::sin(t) + zs * std::cos(t);
        const double r = std::sqrt(xp * xp + ys * ys + zp * zp);
        return {rad2deg(std::atan2(ys, xp)), rad2deg(std::acos(std::clamp(zp / r, -1.0, 1.0)))};
    }

    // Large-scale state of one UE-site link; the co-located sectors of a site share it.
    struct LinkState
    {
        int ue_id = 0;
        int site_id = 0;
        double d2d = 0.0;
        double d3d = 0.0;
        bool los = true;
        double shadow_db = 0.0;
        double penetration_db = 0.0;
        Vec2 last_update_position{};
        double los_anchor_d2d = 0.0; // d2d when LOS was last drawn
    };

    namespace detail
    {
        inline double shadow_sigma(const ChannelConfig &ch, bool los)
        {
            return ch.shadowing ? (los ? ch.shadow_sigma_los_db : ch.shadow_sigma_nlos_db) : 0.0;
        }

        inline double decorrelation(const ChannelConfig &ch, bool los)
        {
            return los ? ch.decorrelation_los_m : ch.decorrelation_nlos_m;
        }

        template <typename Gen>
        bool draw_los(const ChannelConfig &ch, double d2d, Gen &rng)
        {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            switch (ch.los_mode)
            {
            case LosMode::ForceLos:
                return true;
            case LosMode::ForceNlos:
                return false;
            default:
                return u < los_probability(d2d);
            }
        }

        inline void set_geometry(LinkState &l, Vec2 site, Vec2 ue, const ScenarioConfig &cfg)
        {
            const double dh = cfg.bs_height - cfg.ue_height;
            l.d2d = (ue - site).norm();
            l.d3d = std::sqrt(l.d2d * l.d2d + dh * dh);
        }
    }

    template <typename Gen>
    LinkState init_link(int ue_id, int site_id, Vec2 site, Vec2 ue, bool indoor, double depth,
                        const ScenarioConfig &cfg, Gen &rng)
    {
        LinkState l;
        l.ue_id = ue_id;
        l.site_id = site_id;
        detail::set_geometry(l, site, ue, cfg);
        l.los = detail::draw_los(cfg.channel, l.d2d, rng);
        l.los_anchor_d2d = l.d2d;
        l.shadow_db = std::normal_distribution<double>(0.0, 1.0)(rng) * detail::shadow_sigma(cfg.channel, l.los);
        l.penetration_db = penetration_loss(indoor, depth, cfg.channel);
        l.last_update_position = ue;
        return l;
    }

    // Gauss-Markov shadowing step driven by the distance moved since the last update.
    template <typename Gen>
    LinkState update_shadow(LinkState link, Vec2 new_position, Vec2 site, const ScenarioConfig &cfg, Gen &rng)
    {
        const auto &ch = cfg.channel;
        const double moved = (new_position - link.last_update_position).norm();
        detail::set_geometry(link, site, new_position, cfg);

        if (std::abs(link.d2d - link.los_anchor_d2d) > detail::decorrelation(ch, link.los))
        {
            const double old_sigma = detail::shadow_sigma(ch, link.los);
            link.los = detail::draw_los(ch, link.d2d, rng);
            link.los_anchor_d2d = link.d2d;
            const double new_sigma = detail::shadow_sigma(ch, link.los);
            if (old_sigma > 0.0)
                link.shadow_db *= new_sigma / old_sigma;
        }

        const double rho = std::exp(-moved / detail::decorrelation(ch, link.los));
        const double n = std::normal_distribution<double>(0.0, 1.0)(rng);
        link.shadow_db = rho * link.shadow_db + std::sqrt(1.0 - rho * rho) * n * detail::shadow_sigma(ch, link.los);
        link.last_update_position = new_position;
        return link;
    }

    // Pathloss + shadowing + penetration (dB).
    inline double link_loss_db(const LinkState &l, const ScenarioConfig &cfg, double fc)
    {
        return pathloss(std::max(l.d3d, 1.0), fc, l.los, cfg.ue_height) + l.shadow_db + l.penetration_db;
    }

    inline double beam_rsrp(const LinkState &link, const SectorSite &sector, const GridOfBeams &grid,
                            const Beam &beam, const ScenarioConfig &cfg)
    {
        const auto dir = panel_direction(sector, link.last_update_position, cfg.bs_height, cfg.ue_height);
        const double gain = beam_gain(beam, grid.geometry, dir.azimuth, dir.zenith, grid.pattern);
        return re_power_dbm(cfg) + gain - link_loss_db(link, cfg, cfg.carrier_frequency);
    }

    // RSRP of every beam of a sector toward the link's current position, indexed by beam id.
    inline std::vector<double> sector_rsrp(const LinkState &link, const SectorSite &sector, const GridOfBeams &grid,
                                           const ScenarioConfig &cfg, double fc)
    {
        const auto dir = panel_direction(sector, link.last_update_position, cfg.bs_height, cfg.ue_height);
        auto out = grid.gains(dir.azimuth, dir.zenith);
        const double offset = re_power_dbm(cfg) - link_loss_db(link, cfg, fc);
        for (auto &v : out)
            v += offset;
        return out;
    }
}
