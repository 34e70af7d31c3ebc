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
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "antenna.hpp"
#include "handover.hpp"
#include "ue.hpp"

namespace gobsim
{
    struct MetricsSample
    {
        double time = 0.0;
        int ue_id = 0;
        CellId serving_cell{};
        BeamId serving_beam{};
        bool indoor = false;
        double serving_rsrp = kNegInf; // dBm, L1 of the serving beam
        double best_rsrp = kNegInf;    // dBm, best L1 over the UE's tracked beams
        double delta_rsrp = 0.0;       // dB, network best minus UE best (instantaneous)
        double l3_serving = kNegInf;   // dBm, L3 serving cell quality
        double sinr = 0.0;             // dB
    };

    struct MetricsLog
    {
        std::vector<MetricsSample> samples;
        std::vector<HandoverEvent> events;
        std::uint64_t config_hash = 0;
        std::uint64_t seed = 0;
    };

    // Serving and best values come from the UE's L1-filtered view. Delta compares the
    // network's best beam with the best beam in the UE's tracked set, both at their
    // current true RSRP, so it measures only beam-set misalignment.
    inline MetricsSample sample_metrics(const UeState &ue, const NetworkView &net, double now)
    {
        MetricsSample s;
        s.time = now;
        s.ue_id = ue.ue_id;
        s.serving_cell = ue.serving_cell;
        s.serving_beam = ue.serving_beam;
        s.indoor = ue.indoor;

        const auto *serving = ue.rrm.find(ue.serving());
        if (!serving)
            throw DomainError("sample_metrics: serving beam is not measured");
        s.serving_rsrp = serving->l1_rsrp;

        double ue_true_best = kNegInf;
        for (const auto &[cell, ids] : ue.rrm.retained)
            for (BeamId b : ids)
            {
                s.best_rsrp = std::max(s.best_rsrp, ue.rrm.beams.at({cell, b}).l1_rsrp);
                ue_true_best = std::max(ue_true_best, net.at({cell, b}));
            }
        s.delta_rsrp = std::max(0.0, net.best() - ue_true_best);

        auto it = ue.rrm.cell_l3.find(ue.serving_cell);
        if (it != ue.rrm.cell_l3.end())
            s.l3_serving = it->second;
        return s;
    }

    // Empirical CDF: ascending values with probability i/n at the i-th.
    inline std::vector<std::pair<double, double>> cdf(std::vector<double> values)
    {
        if (values.empty())
            throw DomainError("cdf: no values");
        std::sort(values.begin(), values.end());
        std::vector<std::pair<double, double>> out;
        out.reserve(values.size());
        const double n = static_cast<double>(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            out.emplace_back(values[i], static_cast<double>(i + 1) / n);
        return out;
    }

    inline double median(std::vector<double> values)
    {
        if (values.empty())
            throw DomainError("median: no values");
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    }

    namespace detail
    {
        inline std::string fixed(double v, int decimals)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
            std::string s(buf);
            if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-')
                s.erase(0, 1);
            return s;
        }
    }

    inline constexpr const char *kMetricsHeader =
        "time,ue_id,serving_cell,serving_beam,indoor,serving_rsrp_dbm,best_rsrp_dbm,delta_rsrp_db,l3_serving_dbm,sinr_db";
    inline constexpr const char *kEventsHeader = "time,ue_id,source,target,outcome";
    inline constexpr const char *kGridHeader = "beam_id,steer_azimuth_deg,steer_zenith_deg,peak_gain_dbi";

    inline void write_metrics_csv(std::ostream &os, const std::vector<MetricsSample> &samples)
    {
        using detail::fixed;
        os << kMetricsHeader << '\n';
        for (const auto &s : samples)
            os << fixed(s.time, 2) << ',' << s.ue_id << ',' << index(s.serving_cell) << ',' << index(s.serving_beam)
               << ',' << (s.indoor ? 1 : 0) << ',' << fixed(s.serving_rsrp, 2) << ',' << fixed(s.best_rsrp, 2) << ','
               << fixed(s.delta_rsrp, 2) << ',' << fixed(s.l3_serving, 2) << ',' << fixed(s.sinr, 2) << '\n';
    }

    inline void write_events_csv(std::ostream &os, const std::vector<HandoverEvent> &events)
    {
        os << kEventsHeader << '\n';
        for (const auto &e : events)
            os << detail::fixed(e.time, 3) << ',' << e.ue_id << ',' << index(e.source) << ',' << index(e.target) << ','
               << to_string(e.outcome) << '\n';
    }

    // Beam table of a grid; peak gain is evaluated at each beam's own steering direction.
    inline void write_grid_csv(std::ostream &os, const GridOfBeams &grid)
    {
        using detail::fixed;
        os << kGridHeader << '\n';
        for (const auto &b : grid.beams)
            os << index(b.id) << ',' << fixed(b.steer_azimuth, 2) << ',' << fixed(b.steer_zenith, 2) << ','
               << fixed(beam_gain(b, grid.geometry, b.steer_azimuth, b.steer_zenith, grid.pattern), 2) << '\n';
    }
}
