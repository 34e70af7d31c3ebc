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


#include <gtest/gtest.h>

#include <gobsim/rrm.hpp>

using namespace gobsim;

namespace
{
    std::vector<BeamLevel> levels(std::initializer_list<double> v)
    {
        std::vector<BeamLevel> out;
        for (double x : v)
            out.push_back({BeamId{static_cast<std::uint32_t>(out.size())}, x});
        return out;
    }

    RrmConfig rrm(int n, double threshold)
    {
        RrmConfig c;
        c.n_best_beams = n;
        c.report_max_beams = std::min(c.report_max_beams, n);
        c.abs_threshold = threshold;
        return c;
    }

    // Sort, threshold, average the head in mW.
    double oracle_mw(std::vector<double> v, int n, double threshold)
    {
        std::sort(v.begin(), v.end(), std::greater<>());
        std::vector<double> above;
        for (double x : v)
            if (x >= threshold)
                above.push_back(x);
        if (above.empty())
            return std::pow(10.0, v.front() / 10.0);
        const std::size_t k = std::min(above.size(), static_cast<std::size_t>(n));
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            s += std::pow(10.0, above[i] / 10.0);
        return s / static_cast<double>(k);
    }

    NetworkView view(std::vector<std::vector<double>> rsrp) { return {std::move(rsrp)}; }
}

TEST(L1Filter, Values)
{
    const std::vector<double> one{-80.0}, flat{-80.0, -80.0, -80.0}, two{-80.0, -90.0};
    EXPECT_DOUBLE_EQ(l1_filter(one, 5), -80.0);
    EXPECT_NEAR(l1_filter(flat, 3), -80.0, 1e-12);
    EXPECT_NEAR(l1_filter(two, 2), -82.5964, 1e-4);
    EXPECT_NEAR(l1_filter(two, 1), -90.0, 1e-12);
    EXPECT_THROW(l1_filter(std::span<const double>{}, 3), DomainError);
}

TEST(Consolidation, Values)
{
    const auto a = consolidate_cell_quality(levels({-80.0, -85.0, -90.0}), rrm(2, -88.0));
    EXPECT_NEAR(a.consolidated_rsrp, -81.8170, 1e-4);
    EXPECT_EQ(a.contributing_beams, (std::vector<BeamId>{BeamId{0}, BeamId{1}}));
    EXPECT_FALSE(a.fallback);

    const auto b = consolidate_cell_quality(levels({-100.0, -105.0}), rrm(4, -88.0));
    EXPECT_DOUBLE_EQ(b.consolidated_rsrp, -100.0);
    EXPECT_TRUE(b.fallback);
    EXPECT_EQ(b.contributing_beams, (std::vector<BeamId>{BeamId{0}}));

    const auto c = consolidate_cell_quality(levels({-93.0, -71.5, -80.0}), rrm(1, -120.0));
    EXPECT_DOUBLE_EQ(c.consolidated_rsrp, -71.5);
    EXPECT_EQ(c.contributing_beams, (std::vector<BeamId>{BeamId{1}}));

    EXPECT_THROW(consolidate_cell_quality(std::span<const BeamLevel>{}, rrm(2, -88.0)), DomainError);
}

TEST(Consolidation, MatchesBruteForceOracle)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> level(-130.0, -60.0), thr(-120.0, -70.0);
    std::uniform_int_distribution<int> count(1, 24), n(1, 8);
    for (int i = 0; i < 1000; ++i)
    {
        std::vector<BeamLevel> beams;
        std::vector<double> raw;
        const int m = count(rng);
        for (int j = 0; j < m; ++j)
        {
            raw.push_back(level(rng));
            beams.push_back({BeamId{static_cast<std::uint32_t>(j)}, raw.back()});
        }
        const auto cfg = rrm(n(rng), thr(rng));
        const auto q = consolidate_cell_quality(beams, cfg);
        const double expected = oracle_mw(raw, cfg.n_best_beams, cfg.abs_threshold);
        EXPECT_NEAR(dbm2mw(q.consolidated_rsrp) / expected, 1.0, 1e-12);

        const double best = *std::max_element(raw.begin(), raw.end());
        EXPECT_LE(q.consolidated_rsrp, best + 1e-12);
        EXPECT_GE(q.consolidated_rsrp, best - 10.0 * std::log10(cfg.n_best_beams) - 1e-12);
        EXPECT_GE(q.contributing_beams.size(), 1u);
        EXPECT_LE(static_cast<int>(q.contributing_beams.size()), cfg.n_best_beams);
        if (!q.fallback)
        {
            for (BeamId b : q.contributing_beams)
                EXPECT_GE(raw[index(b)], cfg.abs_threshold);
        }
    }
}

// Raising one beam never lowers the cell quality, except when that beam crosses the
// threshold while fewer than N other beams are above it and joins a stronger average.
TEST(Consolidation, MonotoneInEachBeam)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> level(-125.0, -65.0), bump(0.0, 25.0);
    std::uniform_int_distribution<int> count(1, 12), n(1, 6);
    int checked = 0;
    for (int i = 0; i < 2000; ++i)
    {
        std::vector<double> raw;
        const int m = count(rng);
        for (int j = 0; j < m; ++j)
            raw.push_back(level(rng));
        const auto cfg = rrm(n(rng), -95.0);
        const std::size_t pick = static_cast<std::size_t>(i) % raw.size();
        auto raised = raw;
        raised[pick] += bump(rng);

        const int others_above = static_cast<int>(
            std::count_if(raw.begin(), raw.end(), [&](double x) { return x >= cfg.abs_threshold; }) -
            (raw[pick] >= cfg.abs_threshold ? 1 : 0));
        const bool crosses = raw[pick] < cfg.abs_threshold && raised[pick] >= cfg.abs_threshold;
        if (crosses && others_above > 0 && others_above < cfg.n_best_beams)
            continue;
        ++checked;

        auto to_levels = [](const std::vector<double> &v) {
            std::vector<BeamLevel> out;
            for (std::size_t j = 0; j < v.size(); ++j)
                out.push_back({BeamId{static_cast<std::uint32_t>(j)}, v[j]});
            return out;
        };
        EXPECT_GE(consolidate_cell_quality(to_levels(raised), cfg).consolidated_rsrp,
                  consolidate_cell_quality(to_levels(raw), cfg).consolidated_rsrp - 1e-12);
    }
    EXPECT_GT(checked, 1500);
}

TEST(Consolidation, ThresholdCrossingCounterexample)
{
    const auto cfg = rrm(2, -88.0);
    const double before = consolidate_cell_quality(levels({-80.0, -100.0}), cfg).consolidated_rsrp;
    const double after = consolidate_cell_quality(levels({-80.0, -87.0}), cfg).consolidated_rsrp;
    EXPECT_DOUBLE_EQ(before, -80.0);
    EXPECT_NEAR(after, -82.2202, 1e-4);
    EXPECT_LT(after, before);
}

TEST(L3Filter, Values)
{
    EXPECT_DOUBLE_EQ(l3_filter(std::nullopt, -91.0, 4), -91.0);
    EXPECT_DOUBLE_EQ(l3_filter(-70.0, -90.0, 0), -90.0);
    EXPECT_DOUBLE_EQ(l3_filter(-80.0, -90.0, 4), -85.0);
    EXPECT_THROW(l3_filter(-80.0, -90.0, -1), DomainError);

    double f = l3_filter(std::nullopt, -77.25, 4);
    for (int i = 0; i < 1000; ++i)
        f = l3_filter(f, -77.25, 4);
    EXPECT_EQ(f, -77.25);
}

TEST(L3Filter, ClosedForm)
{
    for (int k : {1, 4, 7, 11})
    {
        const double a = std::pow(2.0, -k / 4.0);
        const double f0 = -60.0, m = -95.0;
        double f = f0;
        for (int n = 1; n <= 200; ++n)
        {
            f = l3_filter(f, m, k);
            const double expected = m + std::pow(1.0 - a, n) * (f0 - m);
            EXPECT_NEAR(f / expected, 1.0, 1e-9);
        }
    }
}

TEST(MeasuredBeams, SweepKeepsStrongestPerCell)
{
    RrmConfig cfg;
    RrmState s;
    const auto net = view({{-70, -75, -80, -85, -90, -95, -100, -105, -110, -115},
                           {-130, -125, -121, -119, -118, -140, -150, -160, -170, -180}});
    const auto out = update_measured_beams(s, net, cfg, 0.0);
    ASSERT_EQ(out.size(), 6u);
    EXPECT_EQ(s.retained.at(CellId{0}), (std::vector<BeamId>{BeamId{0}, BeamId{1}, BeamId{2}, BeamId{3}}));
    EXPECT_EQ(s.retained.at(CellId{1}), (std::vector<BeamId>{BeamId{4}, BeamId{3}}));
    for (const auto &m : out)
    {
        EXPECT_GE(net.at(m.key), cfg.ue_detectable_threshold);
        EXPECT_EQ(m.last_seen, 0.0);
        EXPECT_TRUE(std::isfinite(m.l1_rsrp));
        EXPECT_TRUE(std::isfinite(m.l3_rsrp));
    }
}

TEST(MeasuredBeams, NoDiscoveryBetweenSweeps)
{
    RrmConfig cfg;
    cfg.sweep_period = 0.2;
    RrmState s;
    auto net = view({{-70, -75, -80, -85, -90, -95}});
    update_measured_beams(s, net, cfg, 0.0);
    net.rsrp[0][5] = -60.0;
    update_measured_beams(s, net, cfg, 0.1);
    EXPECT_FALSE(s.tracks({CellId{0}, BeamId{5}}));
    ASSERT_NE(s.find({CellId{0}, BeamId{5}}), nullptr);
    EXPECT_EQ(s.find({CellId{0}, BeamId{5}})->last_seen, 0.0);
    EXPECT_EQ(s.find({CellId{0}, BeamId{5}})->raw_rsrp, -95.0);
    // tracked beams are still refreshed
    EXPECT_EQ(s.find({CellId{0}, BeamId{0}})->last_seen, 0.1);

    const auto out = update_measured_beams(s, net, cfg, 0.2);
    EXPECT_TRUE(s.tracks({CellId{0}, BeamId{5}}));
    EXPECT_EQ(out.front().key, (BeamKey{CellId{0}, BeamId{5}}));
}

TEST(MeasuredBeams, ServingBeamAlwaysTracked)
{
    RrmConfig cfg;
    cfg.n_best_beams = 2;
    cfg.report_max_beams = 2;
    RrmState s;
    const auto net = view({{-70, -75, -80, -85}, {-90, -95, -100, -105}});
    const BeamKey serving{CellId{1}, BeamId{3}};
    update_measured_beams(s, net, cfg, 0.0, serving);
    EXPECT_TRUE(s.tracks(serving));
    EXPECT_EQ(s.retained.at(CellId{1}).size(), 3u);
}

TEST(MeasuredBeams, SubsetOfDetectableAtLastSweep)
{
    RrmConfig cfg;
    cfg.sweep_period = 0.3;
    RrmState s;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lvl(-140.0, -60.0);
    std::vector<std::vector<double>> at_sweep;
    for (int k = 0; k < 60; ++k)
    {
        const double now = 0.1 * k;
        NetworkView net{std::vector<std::vector<double>>(3, std::vector<double>(8))};
        for (auto &c : net.rsrp)
            for (auto &v : c)
                v = lvl(rng);
        const bool sweep = is_sweep_instant(s, now, cfg);
        if (sweep)
            at_sweep = net.rsrp;
        const auto out = update_measured_beams(s, net, cfg, now);
        for (const auto &m : out)
        {
            EXPECT_GE(at_sweep[index(m.key.cell)][index(m.key.beam)], cfg.ue_detectable_threshold);
            EXPECT_LE(m.last_seen, now);
        }
        for (const auto &[cell, ids] : s.retained)
            EXPECT_LE(static_cast<int>(ids.size()), cfg.n_best_beams);
    }
}

TEST(MeasuredBeams, DegenerateConfigTracksEverything)
{
    RrmConfig cfg;
    cfg.n_best_beams = 16;
    cfg.ue_detectable_threshold = kNegInf;
    cfg.sweep_period = 0.1;
    RrmState s;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lvl(-180.0, -60.0);
    for (int k = 0; k < 20; ++k)
    {
        NetworkView net{std::vector<std::vector<double>>(2, std::vector<double>(16))};
        for (auto &c : net.rsrp)
            for (auto &v : c)
                v = lvl(rng);
        const auto out = update_measured_beams(s, net, cfg, 0.1 * k);
        EXPECT_EQ(out.size(), 32u);
        EXPECT_TRUE(s.tracks(net.best_key()));
    }
}

TEST(CellQualities, FollowTrackedBeams)
{
    RrmConfig cfg;
    cfg.n_best_beams = 2;
    cfg.report_max_beams = 2;
    cfg.abs_threshold = -88.0;
    RrmState s;
    const auto net = view({{-80, -85, -90}, {-100, -105, -110}});
    update_measured_beams(s, net, cfg, 0.0);
    const auto q = update_cell_qualities(s, cfg);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_NEAR(q[0].consolidated_rsrp, -81.8170, 1e-4);
    EXPECT_DOUBLE_EQ(q[0].l3_cell_rsrp, q[0].consolidated_rsrp);
    EXPECT_TRUE(q[1].fallback);
    EXPECT_DOUBLE_EQ(q[1].consolidated_rsrp, -100.0);
}

TEST(Report, Structure)
{
    RrmConfig cfg;
    cfg.n_best_beams = 2;
    cfg.report_max_beams = 2;
    RrmState s;
    const auto net = view({{-80, -85, -90}, {-70, -95, -75}});
    update_measured_beams(s, net, cfg, 0.0);
    const auto q = update_cell_qualities(s, cfg);

    const auto r = build_report(CellId{0}, q, s, cfg);
    EXPECT_EQ(r.serving.cell, CellId{0});
    ASSERT_EQ(r.neighbors.size(), 1u);
    std::size_t entries = r.serving.beams.size();
    for (const auto &n : r.neighbors)
        entries += n.beams.size();
    EXPECT_LE(entries, 4u);
    for (const auto *rc : {&r.serving, &r.neighbors[0]})
        for (std::size_t i = 1; i < rc->beams.size(); ++i)
            EXPECT_GE(rc->beams[i - 1].l3_rsrp, rc->beams[i].l3_rsrp);
    for (std::size_t c = 0; c < q.size(); ++c)
    {
        const auto &rc = c == 0 ? r.serving : r.neighbors[0];
        ASSERT_EQ(rc.beams.size(), q[c].contributing_beams.size());
        for (std::size_t i = 0; i < rc.beams.size(); ++i)
            EXPECT_EQ(rc.beams[i].beam, q[c].contributing_beams[i]);
    }
    EXPECT_EQ(r.neighbors[0].beams[0].beam, BeamId{0});
    EXPECT_EQ(r.neighbors[0].beams[1].beam, BeamId{2});

    cfg.report_max_beams = 0;
    const auto bare = build_report(CellId{1}, q, s, cfg);
    EXPECT_TRUE(bare.serving.beams.empty());
    EXPECT_TRUE(bare.neighbors[0].beams.empty());
    EXPECT_DOUBLE_EQ(bare.serving.l3_rsrp, q[1].l3_cell_rsrp);

    EXPECT_THROW(build_report(CellId{7}, q, s, cfg), DomainError);
}
