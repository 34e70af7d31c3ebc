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
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "config.hpp"

namespace gobsim
{
    // True (instantaneous) RSRP of every beam of every cell toward one UE, [cell][beam] in dBm.
    struct NetworkView
    {
        std::vector<std::vector<double>> rsrp;

        double at(BeamKey k) const { return rsrp[index(k.cell)][index(k.beam)]; }

        double best() const
        {
            double b = kNegInf;
            for (const auto &cell : rsrp)
                for (double v : cell)
                    b = std::max(b, v);
            return b;
        }

        BeamKey best_key() const
        {
            BeamKey key{};
            double b = kNegInf;
            for (std::size_t c = 0; c < rsrp.size(); ++c)
                for (std::size_t i = 0; i < rsrp[c].size(); ++i)
                    if (rsrp[c][i] > b)
                    {
                        b = rsrp[c][i];
                        key = {CellId{static_cast<std::uint32_t>(c)}, BeamId{static_cast<std::uint32_t>(i)}};
                    }
            return key;
        }
    };

    // Linear-domain moving average over the last `window` samples.
    inline double l1_filter(std::span<const double> samples, int window)
    {
        if (samples.empty())
            throw DomainError("l1_filter: no samples");
        if (window < 1)
            throw DomainError("l1_filter: window must be >= 1");
        const std::size_t n = std::min(samples.size(), static_cast<std::size_t>(window));
        double sum = 0.0;
        for (std::size_t i = samples.size() - n; i < samples.size(); ++i)
            sum += dbm2mw(samples[i]);
        return mw2dbm(sum / static_cast<double>(n));
    }

    // Exponential RRC-level filter in the dB domain, a = 1/2^(k/4).
    inline double l3_filter(std::optional<double> prev, double meas, int k)
    {
        if (k < 0)
            throw DomainError("l3_filter: k must be >= 0");
        if (!prev)
            return meas;
        const double a = std::pow(2.0, -k / 4.0);
        return (1.0 - a) * *prev + a * meas;
    }

    struct BeamLevel
    {
        BeamId beam{};
        double rsrp = 0.0; // dBm
    };

    struct CellQuality
    {
        CellId cell{};
        double consolidated_rsrp = kNegInf;
        double l3_cell_rsrp = kNegInf;
        std::vector<BeamId> contributing_beams; // strongest first
        bool fallback = false;                  // no beam cleared the threshold
    };

    // Cell quality from the N best beams above the absolute threshold, averaged in mW.
    // Falls back to the single best beam when none clears the threshold.
    inline CellQuality consolidate_cell_quality(std::span<const BeamLevel> beams, const RrmConfig &cfg, CellId cell = {})
    {
        if (beams.empty())
            throw DomainError("consolidate_cell_quality: no beams");
        std::vector<BeamLevel> sorted(beams.begin(), beams.end());
        std::stable_sort(sorted.begin(), sorted.end(), [](const BeamLevel &a, const BeamLevel &b) {
            return a.rsrp > b.rsrp || (a.rsrp == b.rsrp && index(a.beam) < index(b.beam));
        });

        CellQuality q;
        q.cell = cell;
        if (sorted.front().rsrp < cfg.abs_threshold)
        {
            q.fallback = true;
            q.consolidated_rsrp = sorted.front().rsrp;
            q.contributing_beams = {sorted.front().beam};
            return q;
        }
        double sum = 0.0;
        for (const auto &b : sorted)
        {
            if (b.rsrp < cfg.abs_threshold || static_cast<int>(q.contributing_beams.size()) >= cfg.n_best_beams)
                break;
            sum += dbm2mw(b.rsrp);
            q.contributing_beams.push_back(b.beam);
        }
        q.consolidated_rsrp = mw2dbm(sum / static_cast<double>(q.contributing_beams.size()));
        return q;
    }

    struct BeamMeasurement
    {
        BeamKey key{};
        double raw_rsrp = kNegInf;
        double l1_rsrp = kNegInf;
        double l3_rsrp = kNegInf;
        double last_seen = kNegInf;
        std::deque<double> history; // last l1_window raw samples
    };

    // Per-UE measurement state: beam filters, the beam set the UE currently tracks, and
    // the L3 state of every cell it has measured.
    struct RrmState
    {
        std::map<BeamKey, BeamMeasurement> beams;
        std::map<CellId, std::vector<BeamId>> retained; // strongest first
        std::map<CellId, double> cell_l3;
        long long last_sweep = -1;

        const BeamMeasurement *find(BeamKey k) const
        {
            auto it = beams.find(k);
            return it == beams.end() ? nullptr : &it->second;
        }

        bool tracks(BeamKey k) const
        {
            auto it = retained.find(k.cell);
            return it != retained.end() && std::find(it->second.begin(), it->second.end(), k.beam) != it->second.end();
        }
    };

    namespace detail
    {
        inline void take_sample(BeamMeasurement &m, double raw, double now, const RrmConfig &cfg)
        {
            m.raw_rsrp = raw;
            m.history.push_back(raw);
            while (static_cast<int>(m.history.size()) > cfg.l1_window)
                m.history.pop_front();
            double sum = 0.0;
            for (double v : m.history)
                sum += dbm2mw(v);
            m.l1_rsrp = mw2dbm(sum / static_cast<double>(m.history.size()));
            m.l3_rsrp = l3_filter(std::isinf(m.l3_rsrp) ? std::nullopt : std::optional<double>(m.l3_rsrp), m.l1_rsrp,
                                  cfg.l3_k);
            m.last_seen = now;
        }
    }

    inline bool is_sweep_instant(const RrmState &s, double now, const RrmConfig &cfg)
    {
        return static_cast<long long>(std::floor(now / cfg.sweep_period + 1e-9)) > s.last_sweep;
    }

    // Refreshes the UE's measured beam set. At sweep instants every detectable beam is
    // measured and each cell keeps its N strongest (by L1); between sweeps only the tracked
    // beams are re-measured and nothing new is discovered. `serving` is always tracked.
    // Returns the tracked set after the update.
    inline std::vector<BeamMeasurement> update_measured_beams(RrmState &s, const NetworkView &net, const RrmConfig &cfg,
                                                              double now, std::optional<BeamKey> serving = {})
    {
        if (is_sweep_instant(s, now, cfg))
        {
            s.last_sweep = static_cast<long long>(std::floor(now / cfg.sweep_period + 1e-9));
            s.retained.clear();
            for (std::size_t c = 0; c < net.rsrp.size(); ++c)
            {
                const CellId cell{static_cast<std::uint32_t>(c)};
                std::vector<BeamLevel> detected;
                for (std::size_t b = 0; b < net.rsrp[c].size(); ++b)
                {
                    const double raw = net.rsrp[c][b];
                    if (raw < cfg.ue_detectable_threshold)
                        continue;
                    const BeamKey key{cell, BeamId{static_cast<std::uint32_t>(b)}};
                    auto &m = s.beams[key];
                    m.key = key;
                    detail::take_sample(m, raw, now, cfg);
                    detected.push_back({key.beam, m.l1_rsrp});
                }
                if (detected.empty())
                    continue;
                std::stable_sort(detected.begin(), detected.end(), [](const BeamLevel &a, const BeamLevel &b) {
                    return a.rsrp > b.rsrp;
                });
                auto &kept = s.retained[cell];
                for (std::size_t i = 0; i < detected.size() && static_cast<int>(i) < cfg.n_best_beams; ++i)
                    kept.push_back(detected[i].beam);
            }
        }
        else
        {
            for (auto &[cell, ids] : s.retained)
                for (BeamId b : ids)
                {
                    const BeamKey key{cell, b};
                    detail::take_sample(s.beams[key], net.at(key), now, cfg);
                }
        }

        if (serving && !s.tracks(*serving))
        {
            auto &m = s.beams[*serving];
            m.key = *serving;
            if (m.last_seen != now)
                detail::take_sample(m, net.at(*serving), now, cfg);
            s.retained[serving->cell].push_back(serving->beam);
        }

        std::vector<BeamMeasurement> out;
        for (auto &[cell, ids] : s.retained)
        {
            std::stable_sort(ids.begin(), ids.end(), [&](BeamId a, BeamId b) {
                return s.beams.at({cell, a}).l1_rsrp > s.beams.at({cell, b}).l1_rsrp;
            });
            for (BeamId b : ids)
                out.push_back(s.beams.at({cell, b}));
        }
        return out;
    }

    // Consolidates every tracked cell from its tracked beams' L1 values and advances the
    // cell's L3 filter. Ordered by cell id.
    inline std::vector<CellQuality> update_cell_qualities(RrmState &s, const RrmConfig &cfg)
    {
        std::vector<CellQuality> out;
        for (const auto &[cell, ids] : s.retained)
        {
            std::vector<BeamLevel> levels;
            for (BeamId b : ids)
                levels.push_back({b, s.beams.at({cell, b}).l1_rsrp});
            auto q = consolidate_cell_quality(levels, cfg, cell);
            auto it = s.cell_l3.find(cell);
            const double l3 =
                l3_filter(it == s.cell_l3.end() ? std::nullopt : std::optional<double>(it->second), q.consolidated_rsrp,
                          cfg.l3_k);
            s.cell_l3[cell] = l3;
            q.l3_cell_rsrp = l3;
            out.push_back(std::move(q));
        }
        return out;
    }

    struct ReportBeam
    {
        BeamId beam{};
        double l3_rsrp = kNegInf;
    };

    struct ReportCell
    {
        CellId cell{};
        double l3_rsrp = kNegInf;
        std::vector<ReportBeam> beams; // descending
    };

    struct MeasurementReport
    {
        ReportCell serving;
        std::vector<ReportCell> neighbors;
    };

    // Serving and neighbour L3 cell qualities, plus up to report_max_beams beam entries
    // per cell drawn from the beams that contributed to that cell's quality.
    inline MeasurementReport build_report(CellId serving, std::span<const CellQuality> cells, const RrmState &s,
                                          const RrmConfig &cfg)
    {
        MeasurementReport r;
        bool have_serving = false;
        for (const auto &q : cells)
        {
            ReportCell rc{q.cell, q.l3_cell_rsrp, {}};
            for (BeamId b : q.contributing_beams)
            {
                if (static_cast<int>(rc.beams.size()) >= cfg.report_max_beams)
                    break;
                const auto *m = s.find({q.cell, b});
                rc.beams.push_back({b, m ? m->l3_rsrp : kNegInf});
            }
            std::stable_sort(rc.beams.begin(), rc.beams.end(),
                             [](const ReportBeam &a, const ReportBeam &b) { return a.l3_rsrp > b.l3_rsrp; });
            if (q.cell == serving)
            {
                r.serving = std::move(rc);
                have_serving = true;
            }
            else
                r.neighbors.push_back(std::move(rc));
        }
        if (!have_serving)
            throw DomainError("build_report: serving cell has no measurement");
        return r;
    }
}
