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

#include <sstream>

#include <gobsim/metrics.hpp>

using namespace gobsim;

namespace
{
    UeState tracked(const NetworkView &net, const RrmConfig &cfg, BeamKey serving)
    {
        UeState ue;
        ue.serving_cell = serving.cell;
        ue.serving_beam = serving.beam;
        update_measured_beams(ue.rrm, net, cfg, 0.0, serving);
        update_cell_qualities(ue.rrm, cfg);
        return ue;
    }
}

TEST(SampleMetrics, DeltaAgainstNetworkBest)
{
    RrmConfig cfg;
    cfg.n_best_beams = 1;
    cfg.report_max_beams = 1;
    cfg.ue_detectable_threshold = -79.0;
    NetworkView net{{{-80.0, -100.0}, {-90.0, -110.0}}};
    // UE only detects b1 (-80); the network best then moves to another beam at -75
    auto ue = tracked(net, cfg, {CellId{0}, BeamId{0}});
    net.rsrp[1][1] = -75.0;
    const auto s = sample_metrics(ue, net, 0.5);
    EXPECT_DOUBLE_EQ(s.serving_rsrp, -80.0);
    EXPECT_DOUBLE_EQ(s.best_rsrp, -80.0);
    EXPECT_NEAR(s.delta_rsrp, 5.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.time, 0.5);
    EXPECT_DOUBLE_EQ(s.l3_serving, -80.0);
}

TEST(SampleMetrics, FullSetHasZeroDelta)
{
    RrmConfig cfg;
    cfg.n_best_beams = 3;
    cfg.ue_detectable_threshold = kNegInf;
    const NetworkView net{{{-80.0, -70.0, -100.0}, {-90.0, -65.0, -110.0}}};
    const auto ue = tracked(net, cfg, {CellId{1}, BeamId{1}});
    const auto s = sample_metrics(ue, net, 0.0);
    EXPECT_EQ(s.delta_rsrp, 0.0);
    EXPECT_DOUBLE_EQ(s.best_rsrp, s.serving_rsrp);
    EXPECT_DOUBLE_EQ(s.best_rsrp, -65.0);
}

TEST(SampleMetrics, BestNotBelowServing)
{
    RrmConfig cfg;
    const NetworkView net{{{-80.0, -70.0, -100.0}, {-90.0, -65.0, -110.0}}};
    const auto ue = tracked(net, cfg, {CellId{0}, BeamId{2}});
    const auto s = sample_metrics(ue, net, 0.0);
    EXPECT_DOUBLE_EQ(s.serving_rsrp, -100.0);
    EXPECT_DOUBLE_EQ(s.best_rsrp, -65.0);
    EXPECT_GE(s.best_rsrp, s.serving_rsrp);
    EXPECT_GE(s.delta_rsrp, 0.0);
}

TEST(SampleMetrics, UnmeasuredServingThrows)
{
    UeState ue;
    const NetworkView net{{{-80.0}}};
    EXPECT_THROW(sample_metrics(ue, net, 0.0), DomainError);
}

TEST(Cdf, Values)
{
    const auto a = cdf({-80.0});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0], (std::pair<double, double>{-80.0, 1.0}));
    const auto b = cdf({-80.0, -90.0});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[0], (std::pair<double, double>{-90.0, 0.5}));
    EXPECT_EQ(b[1], (std::pair<double, double>{-80.0, 1.0}));
    EXPECT_THROW(cdf({}), DomainError);
    EXPECT_THROW(median({}), DomainError);
}

TEST(Cdf, MedianOfNormalSamples)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(1001);
    for (auto &x : v)
        x = n(rng);
    const double m = median(v);
    EXPECT_NEAR(m, 0.0, 0.1);
    const auto c = cdf(v);
    EXPECT_DOUBLE_EQ(c[500].first, m);
    EXPECT_NEAR(c[500].second, 501.0 / 1001.0, 1e-15);
    EXPECT_DOUBLE_EQ(median({1.0, 4.0, 2.0, 3.0}), 2.5);
}

TEST(Csv, Formats)
{
    MetricsSample s;
    s.time = 0.1;
    s.ue_id = 3;
    s.serving_cell = CellId{2};
    s.serving_beam = BeamId{11};
    s.indoor = true;
    s.serving_rsrp = -80.126;
    s.best_rsrp = -79.5;
    s.delta_rsrp = 0.0;
    s.l3_serving = -80.004;
    s.sinr = 12.345;
    std::ostringstream m;
    write_metrics_csv(m, {s});
    EXPECT_EQ(m.str(), std::string(kMetricsHeader) + "\n0.10,3,2,11,1,-80.13,-79.50,0.00,-80.00,12.35\n");

    std::ostringstream e;
    write_events_csv(e, {{5.05, 1, CellId{0}, CellId{4}, HandoverOutcome::PingPong}});
    EXPECT_EQ(e.str(), "time,ue_id,source,target,outcome\n5.050,1,0,4,pingpong\n");

    EXPECT_EQ(detail::fixed(-0.001, 2), "0.00");
    EXPECT_EQ(detail::fixed(-0.01, 2), "-0.01");
}
