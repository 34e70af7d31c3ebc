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

#include "deployment.hpp"

namespace gobsim
{
    // Random-waypoint kinematics of one UE. Speed is fixed for the UE's lifetime.
    struct Motion
    {
        Vec2 position{};
        Vec2 velocity{}; // m/s
        double speed = 0.0; // m/s
        Vec2 waypoint{};
    };

    namespace detail
    {
        inline Vec2 aim(Vec2 from, Vec2 to, double speed)
        {
            const Vec2 d = to - from;
            const double n = d.norm();
            return n > 0.0 ? d * (speed / n) : Vec2{};
        }
    }

    template <typename Gen>
    Motion step_position(Motion m, double dt, const DeploymentArea &area, Gen &rng)
    {
        if (!(dt > 0.0))
            throw DomainError("step_position: dt must be > 0");
        if (m.speed <= 0.0)
            return m;

        double remaining = m.speed * dt;
        for (int guard = 0; guard < 1000 && remaining > 0.0; ++guard)
        {
            const double to_wp = (m.waypoint - m.position).norm();
            if (remaining < to_wp)
            {
                m.position = m.position + m.velocity * (remaining / m.speed);
                remaining = 0.0;
                break;
            }
            m.position = m.waypoint;
            remaining -= to_wp;
            do
                m.waypoint = area.sample_box(rng);
            while (m.waypoint == m.position);
            m.velocity = detail::aim(m.position, m.waypoint, m.speed);
        }
        m.position = area.clamp_to_box(m.position);
        return m;
    }

    struct TrafficState
    {
        int chunks_remaining = 0;
        double next_chunk_time = 0.0; // s
        bool active = false;
        double chunk_served_bits = 0.0;
        double delivered_bits = 0.0; // completed chunks only
    };

    inline TrafficState start_session(const TrafficConfig &cfg, double start_time)
    {
        return {cfg.num_chunks, start_time, false, 0.0, 0.0};
    }

    // Advances the FTP session by one step in which up to `served_bits` could be delivered.
    // The gap between chunks runs from the completion of one to the start of the next.
    inline TrafficState step_traffic(TrafficState ts, double now, double served_bits, const TrafficConfig &cfg)
    {
        const double chunk_bits = cfg.chunk_size * 1e6;
        if (!ts.active && ts.chunks_remaining > 0 && now >= ts.next_chunk_time - 1e-9)
        {
            ts.active = true;
            ts.chunk_served_bits = 0.0;
        }
        if (!ts.active)
            return ts;

        ts.chunk_served_bits += served_bits;
        if (ts.chunk_served_bits >= chunk_bits)
        {
            ts.delivered_bits += chunk_bits;
            ts.chunks_remaining -= 1;
            ts.active = false;
            ts.chunk_served_bits = 0.0;
            ts.next_chunk_time = now + cfg.chunk_interval;
        }
        return ts;
    }
}
