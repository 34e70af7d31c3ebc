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
#include <vector>

#include "config.hpp"

namespace gobsim
{
    struct SectorSite
    {
        int site_id = 0;
        int sector_id = 0;   // within the site
        CellId cell{};       // network-wide index
        Vec2 position{};     // m
        double bearing = 0;  // deg, counter-clockwise from +x
        double downtilt = 0; // deg, mechanical
        std::array<int, 2> array{1, 1}; // rows, cols
    };

    // Site positions: 1 site at the origin, 2 sites ISD apart on the x axis,
    // 3 sites on an equilateral triangle of side ISD centred on the origin.
    inline std::vector<Vec2> site_positions(const ScenarioConfig &cfg)
    {
        const double isd = cfg.inter_site_distance;
        switch (cfg.num_sites)
        {
        case 1:
            return {{0.0, 0.0}};
        case 2:
            return {{-isd / 2.0, 0.0}, {isd / 2.0, 0.0}};
        default:
        {
            const double r = isd / std::sqrt(3.0);
            std::vector<Vec2> p;
            for (double a : {90.0, 210.0, 330.0})
                p.push_back({r * std::cos(deg2rad(a)), r * std::sin(deg2rad(a))});
            return p;
        }
        }
    }

    inline std::vector<SectorSite> build_deployment(const ScenarioConfig &cfg)
    {
        const auto sites = site_positions(cfg);
        const auto shape = cfg.antenna.array_shapes.at(cfg.antenna_elements);
        std::vector<SectorSite> out;
        out.reserve(sites.size() * static_cast<std::size_t>(cfg.sectors_per_site));
        for (std::size_t s = 0; s < sites.size(); ++s)
            for (int k = 0; k < cfg.sectors_per_site; ++k)
                out.push_back({static_cast<int>(s), k, CellId{static_cast<std::uint32_t>(out.size())}, sites[s],
                               360.0 * k / cfg.sectors_per_site, cfg.antenna.mechanical_tilt_deg, shape});
        return out;
    }

    // Convex hull of the sites grown by a margin (ISD/2). UEs are placed inside it
    // and move inside its bounding box.
    class DeploymentArea
    {
    public:
        DeploymentArea(std::vector<Vec2> hull, double margin) : hull_(std::move(hull)), margin_(margin)
        {
            lo_ = hi_ = hull_.front();
            for (const auto &p : hull_)
            {
                lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
                hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
            }
            lo_ = lo_ - Vec2{margin_, margin_};
            hi_ = hi_ + Vec2{margin_, margin_};
        }

        explicit DeploymentArea(const ScenarioConfig &cfg)
            : DeploymentArea(site_positions(cfg), cfg.inter_site_distance / 2.0) {}

        Vec2 lo() const { return lo_; }
        Vec2 hi() const { return hi_; }

        double distance_to_hull(Vec2 p) const
        {
            if (hull_.size() >= 3 && inside_polygon(p))
                return 0.0;
            double d = (p - hull_.front()).norm();
            const std::size_t edges = hull_.size() < 3 ? hull_.size() - 1 : hull_.size();
            for (std::size_t i = 0; i < edges; ++i)
                d = std::min(d, segment_distance(p, hull_[i], hull_[(i + 1) % hull_.size()]));
            return d;
        }

        bool contains(Vec2 p) const { return distance_to_hull(p) <= margin_; }

        bool in_box(Vec2 p) const { return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y; }

        Vec2 clamp_to_box(Vec2 p) const
        {
            return {std::clamp(p.x, lo_.x, hi_.x), std::clamp(p.y, lo_.y, hi_.y)};
        }

        template <typename Gen>
        Vec2 sample_box(Gen &rng) const
        {
            std::uniform_real_distribution<double> ux(lo_.x, hi_.x), uy(lo_.y, hi_.y);
            double x = ux(rng);
            return {x, uy(rng)};
        }

        // Uniform over the grown hull by rejection from the bounding box.
        template <typename Gen>
        Vec2 sample(Gen &rng) const
        {
            for (;;)
            {
                Vec2 p = sample_box(rng);
                if (contains(p))
                    return p;
            }
        }

    private:
        static double segment_distance(Vec2 p, Vec2 a, Vec2 b)
        {
            Vec2 ab = b - a;
            double len2 = ab.dot(ab);
            double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
            return (p - (a + ab * t)).norm();
        }

        bool inside_polygon(Vec2 p) const
        {
            bool pos = false, neg = false;
            for (std::size_t i = 0; i < hull_.size(); ++i)
            {
                double c = (hull_[(i + 1) % hull_.size()] - hull_[i]).cross(p - hull_[i]);
                pos |= c > 0.0;
                neg |= c < 0.0;
            }
            return !(pos && neg);
        }

        std::vector<Vec2> hull_;
        double margin_;
        Vec2 lo_{}, hi_{};
    };
}
