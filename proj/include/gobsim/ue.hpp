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

#include <utility>
#include <vector>

#include "channel.hpp"
#include "handover.hpp"
#include "mobility.hpp"
#include "rrm.hpp"

namespace gobsim
{
    struct UeState
    {
        int ue_id = 0;
        Motion motion{};
        bool indoor = false;
        double indoor_depth = 0.0; // m, fixed at creation
        CellId serving_cell{};
        BeamId serving_beam{};
        RrmState rrm{};
        TrafficState traffic{};
        HandoverState handover{};

        BeamKey serving() const { return {serving_cell, serving_beam}; }
    };

    // Draws the UE population: position uniform in the grown site hull, constant speed
    // uniform in the configured range, indoor flag, indoor depth and session start.
    // Serving cell/beam are left for the engine to attach from the initial RSRP.
    template <typename Gen>
    std::vector<UeState> place_ues(const ScenarioConfig &cfg, Gen &rng)
    {
        const DeploymentArea area(cfg);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<UeState> ues;
        for (int i = 0; i < cfg.num_ues; ++i)
        {
            UeState ue;
            ue.ue_id = i;
            ue.motion.position = area.sample(rng);
            const double u_speed = unit(rng);
            ue.motion.speed = kmh2ms(cfg.ue_speed_range[0] + u_speed * (cfg.ue_speed_range[1] - cfg.ue_speed_range[0]));
            ue.motion.waypoint = area.sample_box(rng);
            ue.motion.velocity = detail::aim(ue.motion.position, ue.motion.waypoint, ue.motion.speed);
            ue.indoor = unit(rng) < cfg.indoor_fraction;
            const double depth = unit(rng) * cfg.channel.max_indoor_depth_m;
            ue.indoor_depth = ue.indoor ? depth : 0.0;
            ue.traffic = start_session(cfg.traffic, unit(rng) * cfg.traffic.start_spread);
            ues.push_back(std::move(ue));
        }
        return ues;
    }

    // Index of the tracked beam of `cell` with the highest L1 value, if any.
    inline std::optional<BeamId> best_tracked_beam(const RrmState &s, CellId cell)
    {
        auto it = s.retained.find(cell);
        if (it == s.retained.end() || it->second.empty())
            return std::nullopt;
        std::optional<BeamId> best;
        double v = kNegInf;
        for (BeamId b : it->second)
        {
            const double l1 = s.beams.at({cell, b}).l1_rsrp;
            if (!best || l1 > v)
            {
                best = b;
                v = l1;
            }
        }
        return best;
    }

    // Switches the UE to `target` at `time`. The serving beam becomes the target's best
    // tracked beam; L3 state is kept, trigger timers reset, traffic is interrupted for
    // exec_interruption. Requires the target to have at least one tracked beam.
    inline std::pair<UeState, HandoverEvent> execute_handover(UeState ue, CellId target, double serving_l3,
                                                              const HandoverConfig &cfg, double time)
    {
        if (target == ue.serving_cell)
            throw DomainError("execute_handover: target equals serving cell");
        const auto beam = best_tracked_beam(ue.rrm, target);
        if (!beam)
            throw DomainError("execute_handover: target cell is not measured");

        HandoverEvent ev{time, ue.ue_id, ue.serving_cell, target,
                         classify_handover(ue.serving_cell, target, serving_l3, time, ue.handover.last_completed, cfg)};
        ue.serving_cell = target;
        ue.serving_beam = *beam;
        ue.handover.trigger.entered.clear();
        ue.handover.pending.reset();
        ue.handover.last_completed = ev;
        ue.handover.interrupted_until = time + cfg.exec_interruption;
        return {std::move(ue), ev};
    }
}
