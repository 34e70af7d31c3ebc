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

#include <map>
#include <optional>
#include <span>
#include <string>

#include "config.hpp"

namespace gobsim
{
    enum class HandoverOutcome
    {
        Success,
        PingPong,
        Failure,
    };

    inline std::string to_string(HandoverOutcome o)
    {
        switch (o)
        {
        case HandoverOutcome::PingPong:
            return "pingpong";
        case HandoverOutcome::Failure:
            return "failure";
        default:
            return "success";
        }
    }

    struct HandoverEvent
    {
        double time = 0.0;
        int ue_id = 0;
        CellId source{};
        CellId target{};
        HandoverOutcome outcome = HandoverOutcome::Success;
    };

    struct NeighborQuality
    {
        CellId cell{};
        double l3_rsrp = kNegInf;
    };

    // Time at which each neighbour started to satisfy the entering condition.
    struct TriggerState
    {
        std::map<CellId, double> entered;
    };

    // A3-style trigger: neighbour > serving + hysteresis, held for time_to_trigger.
    // Returns the strongest neighbour whose condition has held long enough (lowest id on ties).
    inline std::optional<CellId> evaluate_trigger(double serving_l3, std::span<const NeighborQuality> neighbors,
                                                  const HandoverConfig &cfg, TriggerState &state, double now)
    {
        std::map<CellId, double> still;
        std::optional<NeighborQuality> best;
        for (const auto &n : neighbors)
        {
            if (!(n.l3_rsrp > serving_l3 + cfg.hysteresis))
                continue;
            auto it = state.entered.find(n.cell);
            const double since = it == state.entered.end() ? now : it->second;
            still[n.cell] = since;
            if (now - since + 1e-9 < cfg.time_to_trigger)
                continue;
            if (!best || n.l3_rsrp > best->l3_rsrp || (n.l3_rsrp == best->l3_rsrp && index(n.cell) < index(best->cell)))
                best = n;
        }
        state.entered = std::move(still);
        if (best)
            return best->cell;
        return std::nullopt;
    }

    struct PendingHandover
    {
        CellId target{};
        double trigger_time = 0.0;
        double effective_time = 0.0;
    };

    struct HandoverState
    {
        TriggerState trigger;
        std::optional<PendingHandover> pending;
        std::optional<HandoverEvent> last_completed;
        double interrupted_until = kNegInf;
    };

    inline PendingHandover schedule_handover(CellId target, const HandoverConfig &cfg, double now)
    {
        return {target, now, now + cfg.prep_delay};
    }

    // Failure when the source had already faded below the threshold at execution; ping-pong
    // when the UE returns to the cell it left (by a completed handover) within the window.
    inline HandoverOutcome classify_handover(CellId source, CellId target, double serving_l3, double time,
                                             const std::optional<HandoverEvent> &previous, const HandoverConfig &cfg)
    {
        if (serving_l3 < cfg.fail_rsrp_threshold)
            return HandoverOutcome::Failure;
        if (previous && previous->outcome != HandoverOutcome::Failure && previous->source == target &&
            previous->target == source && time - previous->time <= cfg.pingpong_window + 1e-9)
            return HandoverOutcome::PingPong;
        return HandoverOutcome::Success;
    }
}
