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

#include <gobsim/coverage.hpp>

using namespace gobsim;

TEST(Coverage, RowCountAndDeterminism)
{
    ScenarioConfig cfg;
    const CoverageSpec spec;
    const auto map = coverage_map(cfg, spec);
    EXPECT_EQ(map.rows.size(), 1000u);
    EXPECT_EQ(map.elements, (std::vector<int>{16, 32, 64, 128}));
    const auto again = coverage_map(cfg, spec);
    for (std::size_t i = 0; i < map.rows.size(); ++i)
    {
        EXPECT_EQ(map.rows[i].position, again.rows[i].position);
        EXPECT_EQ(map.rows[i].rsrp, again.rows[i].rsrp);
    }
    const DeploymentArea area(cfg);
    for (const auto &r : map.rows)
        EXPECT_TRUE(area.contains(r.position));
}

TEST(Coverage, LargestArrayDominatesSmallest)
{
    const auto map = coverage_map(ScenarioConfig{}, CoverageSpec{});
    for (const auto &r : map.rows)
    {
        EXPECT_GE(r.rsrp.back(), r.rsrp.front());
        for (double v : r.rsrp)
            EXPECT_GT(v, r.nbf_rsrp);
    }
}

TEST(Coverage, NbfIsElementGainOnly)
{
    ScenarioConfig cfg;
    cfg.num_sites = 1;
    cfg.sectors_per_site = 1;
    CoverageSpec spec;
    spec.positions.reset();
    spec.lo = {-200.0, -200.0};
    spec.hi = {200.0, 200.0};
    spec.resolution = 50.0;
    const auto map = coverage_map(cfg, spec);
    ASSERT_EQ(map.rows.size(), 81u);
    const auto sector = build_deployment(cfg).front();
    for (const auto &r : map.rows)
    {
        const double d2d = r.position.norm();
        const double d3d = std::hypot(d2d, 23.5);
        const bool los = los_probability(d2d) >= 0.5;
        const auto dir = panel_direction(sector, r.position, 25.0, 1.5);
        const double expected = 11.955129 + element_gain(dir.azimuth, dir.zenith) - pathloss(d3d, 28.0, los, 1.5);
        EXPECT_NEAR(r.nbf_rsrp, expected, 1e-5);
    }
}

TEST(Coverage, CsvColumns)
{
    CoverageSpec spec;
    spec.positions = 3;
    spec.elements = {16, 64};
    const auto map = coverage_map(ScenarioConfig{}, spec);
    std::ostringstream os;
    write_coverage_csv(os, map);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header, "x_m,y_m,rsrp_e16_dbm,rsrp_e64_dbm,rsrp_nbf_dbm");
    int rows = 0;
    for (std::string line; std::getline(is, line);)
    {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    }
    EXPECT_EQ(rows, 3);
}

TEST(Coverage, BadSpecRejected)
{
    CoverageSpec spec;
    spec.positions = -1;
    EXPECT_THROW(coverage_map(ScenarioConfig{}, spec), DomainError);
    spec.positions.reset();
    spec.resolution = 0.0;
    EXPECT_THROW(coverage_map(ScenarioConfig{}, spec), DomainError);
    spec = CoverageSpec{};
    spec.elements = {24};
    EXPECT_THROW(coverage_map(ScenarioConfig{}, spec), DomainError);
}
