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
#include "channel.hpp"
#include "deployment.hpp"
#include "metrics.hpp"
#include "ue.hpp"

namespace gobsim
{
    // Fixed-step system-level simulation of one scenario. Each step: move UEs, update links
    // and shadowing, evaluate every beam's true RSRP, refresh the UEs' measured beam sets,
    // filter and consolidate, sample metrics, run handovers, then advance traffic.
    // Fully deterministic for a given (config, seed).
    class Simulation
    {
    public:
        explicit Simulation(ScenarioConfig cfg) : Simulation(cfg, initial_population(cfg)) {}

        // Runs an explicit UE population (serving cell/beam are re-attached).
        Simulation(ScenarioConfig cfg, std::vector<UeState> ues)
            : cfg_(std::move(cfg)), sectors_((validate(cfg_), build_deployment(cfg_))), area_(cfg_),
              grid_(build_grid(ArrayGeometry::from_config(cfg_.antenna, cfg_.antenna_elements), cfg_.antenna)),
              sites_(site_positions(cfg_)), ues_(std::move(ues))
        {
            const double steps = cfg_.sim_duration / cfg_.time_step;
            n_steps_ = static_cast<std::size_t>(std::max(0.0, std::ceil(steps - 1e-9)));
            log_.config_hash = config_hash(cfg_);
            log_.seed = cfg_.rng_seed;

            for (auto &ue : ues_)
            {
                mobility_rng_.push_back(make_stream(cfg_.rng_seed, static_cast<std::uint32_t>(Stream::Mobility),
                                                    static_cast<std::uint32_t>(ue.ue_id)));
                auto &links = links_.emplace_back();
                auto &rngs = channel_rng_.emplace_back();
                for (std::size_t s = 0; s < sites_.size(); ++s)
                {
                    rngs.push_back(make_stream(cfg_.rng_seed, static_cast<std::uint32_t>(Stream::Channel),
                                               static_cast<std::uint32_t>(ue.ue_id), static_cast<std::uint32_t>(s)));
                    links.push_back(init_link(ue.ue_id, static_cast<int>(s), sites_[s], ue.motion.position, ue.indoor,
                                              ue.indoor_depth, cfg_, rngs.back()));
                }
                const auto best = network_view(links).best_key();
                ue.serving_cell = best.cell;
                ue.serving_beam = best.beam;
            }
        }

        bool done() const { return step_ >= n_steps_; }
        std::size_t steps_total() const { return n_steps_; }
        double time() const { return static_cast<double>(step_) * cfg_.time_step; }

        void step()
        {
            if (done())
                return;
            const double now = time();
            const auto &rrm = cfg_.rrm;

            if (step_ > 0)
                for (std::size_t u = 0; u < ues_.size(); ++u)
                {
                    ues_[u].motion = step_position(ues_[u].motion, cfg_.time_step, area_, mobility_rng_[u]);
                    for (std::size_t s = 0; s < sites_.size(); ++s)
                        links_[u][s] = update_shadow(links_[u][s], ues_[u].motion.position, sites_[s], cfg_,
                                                     channel_rng_[u][s]);
                }

            views_.clear();
            for (std::size_t u = 0; u < ues_.size(); ++u)
                views_.push_back(network_view(links_[u]));

            // (serving beam, traffic active) at the start of the step, for interference
            std::vector<std::pair<BeamKey, bool>> activity;
            for (const auto &ue : ues_)
                activity.emplace_back(ue.serving(), ue.traffic.active);

            for (std::size_t u = 0; u < ues_.size(); ++u)
            {
                auto &ue = ues_[u];
                const auto &net = views_[u];

                update_measured_beams(ue.rrm, net, rrm, now, ue.serving());
                const auto cells = update_cell_qualities(ue.rrm, rrm);
                if (auto b = best_tracked_beam(ue.rrm, ue.serving_cell))
                    ue.serving_beam = *b;
                const auto report = build_report(ue.serving_cell, cells, ue.rrm, rrm);

                auto sample = sample_metrics(ue, net, now);
                sample.sinr = sinr_db(u, activity);
                log_.samples.push_back(sample);

                run_handover(ue, report, now);

                const double capacity = now >= ue.handover.interrupted_until - 1e-9
                                            ? spectral_efficiency(sample.sinr) * cfg_.bandwidth * 1e6 * cfg_.time_step
                                            : 0.0;
                ue.traffic = step_traffic(ue.traffic, now, capacity, cfg_.traffic);
            }
            ++step_;
        }

        MetricsLog run()
        {
            while (!done())
                step();
            return log_;
        }

        const MetricsLog &log() const { return log_; }
        const ScenarioConfig &config() const { return cfg_; }
        const std::vector<UeState> &ues() const { return ues_; }
        const std::vector<SectorSite> &sectors() const { return sectors_; }
        const GridOfBeams &grid() const { return grid_; }
        const std::vector<NetworkView> &network_views() const { return views_; }
        const std::vector<std::vector<LinkState>> &links() const { return links_; }

    private:
        static std::vector<UeState> initial_population(const ScenarioConfig &cfg)
        {
            validate(cfg);
            auto rng = make_stream(cfg.rng_seed, static_cast<std::uint32_t>(Stream::Placement));
            return place_ues(cfg, rng);
        }

        NetworkView network_view(const std::vector<LinkState> &links) const
        {
            NetworkView v;
            v.rsrp.reserve(sectors_.size());
            for (const auto &sec : sectors_)
                v.rsrp.push_back(sector_rsrp(links[static_cast<std::size_t>(sec.site_id)], sec, grid_, cfg_,
                                             cfg_.carrier_frequency));
            return v;
        }

        double spectral_efficiency(double sinr) const
        {
            return std::min(cfg_.channel.max_spectral_efficiency, std::log2(1.0 + std::pow(10.0, sinr / 10.0)));
        }

        // Serving beam power over noise plus, for every other sector, the mean power of the
        // beams it is using for UEs with an active download.
        double sinr_db(std::size_t u, const std::vector<std::pair<BeamKey, bool>> &activity) const
        {
            const auto &net = views_[u];
            const CellId own = ues_[u].serving_cell;
            std::vector<double> sum(sectors_.size(), 0.0);
            std::vector<int> count(sectors_.size(), 0);
            for (std::size_t v = 0; v < activity.size(); ++v)
            {
                const auto &[key, active] = activity[v];
                if (v == u || !active || key.cell == own)
                    continue;
                sum[index(key.cell)] += dbm2mw(net.at(key));
                count[index(key.cell)] += 1;
            }
            double interference = 0.0;
            for (std::size_t c = 0; c < sum.size(); ++c)
                if (count[c] > 0)
                    interference += sum[c] / count[c];
            const double signal = dbm2mw(net.at(ues_[u].serving()));
            return mw2dbm(signal) - mw2dbm(interference + dbm2mw(re_noise_dbm(cfg_)));
        }

        void run_handover(UeState &ue, const MeasurementReport &report, double now)
        {
            const auto &hc = cfg_.handover;
            // true when a handover was executed
            auto execute_due = [&] {
                if (!ue.handover.pending || now < ue.handover.pending->effective_time - 1e-9)
                    return false;
                const PendingHandover p = *ue.handover.pending;
                if (!best_tracked_beam(ue.rrm, p.target))
                {
                    ue.handover.pending.reset();
                    return false;
                }
                const double serving_l3 = ue.rrm.cell_l3.at(ue.serving_cell);
                auto [next, ev] = execute_handover(std::move(ue), p.target, serving_l3, hc, p.effective_time);
                ue = std::move(next);
                log_.events.push_back(ev);
                return true;
            };

            // the report predates a handover executed in this step
            if (execute_due() || ue.handover.pending)
                return;

            std::vector<NeighborQuality> neighbors;
            for (const auto &n : report.neighbors)
                neighbors.push_back({n.cell, n.l3_rsrp});
            if (auto target = evaluate_trigger(report.serving.l3_rsrp, neighbors, hc, ue.handover.trigger, now))
            {
                ue.handover.pending = schedule_handover(*target, hc, now);
                execute_due();
            }
        }

        ScenarioConfig cfg_;
        std::vector<SectorSite> sectors_;
        DeploymentArea area_;
        GridOfBeams grid_;
        std::vector<Vec2> sites_;
        std::vector<UeState> ues_;
        std::vector<Rng> mobility_rng_;
        std::vector<std::vector<Rng>> channel_rng_;
        std::vector<std::vector<LinkState>> links_;
        std::vector<NetworkView> views_;
        MetricsLog log_;
        std::size_t n_steps_ = 0;
        std::size_t step_ = 0;
    };

    inline MetricsLog run(const ScenarioConfig &cfg)
    {
        return Simulation(cfg).run();
    }
}
