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

#include <gobsim/cli.hpp>

namespace fs = std::filesystem;
using namespace gobsim;

namespace
{
    class Cli : public ::testing::Test
    {
    protected:
        void SetUp() override
        {
            dir_ = fs::temp_directory_path() /
                   ("gobsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
            fs::remove_all(dir_);
            fs::create_directories(dir_);
        }

        void TearDown() override { fs::remove_all(dir_); }

        std::string write_config(const std::string &name, const std::string &text) const
        {
            const auto p = dir_ / name;
            std::ofstream(p) << text;
            return p.string();
        }

        int call(std::vector<std::string> args)
        {
            args.insert(args.begin(), "gobsim");
            std::vector<const char *> argv;
            for (const auto &a : args)
                argv.push_back(a.c_str());
            out_.str("");
            err_.str("");
            return cli::main(static_cast<int>(argv.size()), argv.data(), out_, err_);
        }

        static std::string slurp(const fs::path &p)
        {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        }

        static std::vector<std::string> listing(const fs::path &d)
        {
            std::vector<std::string> names;
            if (fs::exists(d))
                for (const auto &e : fs::directory_iterator(d))
                    names.push_back(e.path().filename().string());
            std::sort(names.begin(), names.end());
            return names;
        }

        fs::path dir_;
        std::ostringstream out_, err_;
    };

    const char *kQuick = R"({"sim_duration": 3.0, "num_ues": 4})";
}

TEST_F(Cli, ValidateEchoesEffectiveConfig)
{
    const auto cfg = write_config("default.json", "{}");
    EXPECT_EQ(call({"validate", "--config", cfg}), 0);
    EXPECT_EQ(parse_config(out_.str()), ScenarioConfig{});
    EXPECT_EQ(call({"validate", "--config", cfg, "--seed", "7", "--elements", "32,64"}), 0);
    const auto echoed = parse_config(out_.str());
    EXPECT_EQ(echoed.rng_seed, 7u);
    EXPECT_EQ(echoed.element_sweep, (std::vector<int>{32, 64}));
    EXPECT_EQ(echoed.antenna_elements, 64);
}

TEST_F(Cli, ExitCodes)
{
    const auto good = write_config("good.json", "{}");
    const auto invalid = write_config("bad.json", R"({"time_step": 0})");
    const auto broken = write_config("broken.json", R"({"time_step": )");
    EXPECT_EQ(call({"validate", "--config", invalid}), 1);
    EXPECT_NE(err_.str().find("time_step > 0"), std::string::npos);
    EXPECT_EQ(call({"validate", "--config", broken}), 1);
    EXPECT_NE(err_.str().find("syntax error"), std::string::npos);
    EXPECT_EQ(call({"validate", "--config", (dir_ / "missing.json").string()}), 1);
    EXPECT_EQ(call({"validate", "--config", good, "--elements", "24"}), 1);

    EXPECT_EQ(call({}), 2);
    EXPECT_EQ(call({"frobnicate"}), 2);
    EXPECT_EQ(call({"run"}), 2);
    EXPECT_EQ(call({"run", "--config", good, "--seed", "x"}), 2);
    EXPECT_EQ(call({"run", "--config", good, "--freq", "28"}), 2);
    EXPECT_EQ(call({"coverage-map", "--config", good, "--freq", "-1"}), 2);
    EXPECT_EQ(call({"--help"}), 0);
}

TEST_F(Cli, UsageErrorsWriteNothing)
{
    const auto good = write_config("good.json", kQuick);
    const auto out = dir_ / "out";
    EXPECT_EQ(call({"run", "--config", good, "--out", out.string(), "--bogus"}), 2);
    EXPECT_EQ(call({"coverage-map", "--config", good, "--out", out.string(), "--positions", "-5"}), 2);
    EXPECT_EQ(call({"run", "--config", (dir_ / "nope.json").string(), "--out", out.string()}), 1);
    EXPECT_FALSE(fs::exists(out));
}

TEST_F(Cli, RunIsByteIdenticalAndNamed)
{
    const auto cfg = write_config("quick.json", kQuick);
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(call({"run", "--config", cfg, "--seed", "7", "--elements", "16,64", "--out", a.string()}), 0);
    ASSERT_EQ(call({"run", "--config", cfg, "--seed", "7", "--elements", "16,64", "--out", b.string(), "--parallel"}),
              0);
    const std::vector<std::string> expected{
        "run_16elem_seed7.csv",        "run_16elem_seed7.meta.json", "run_16elem_seed7_events.csv",
        "run_16elem_seed7_grid.csv",   "run_64elem_seed7.csv",       "run_64elem_seed7.meta.json",
        "run_64elem_seed7_events.csv", "run_64elem_seed7_grid.csv"};
    EXPECT_EQ(listing(a), expected);
    EXPECT_EQ(listing(b), expected);
    for (const auto &name : expected)
        EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;

    const auto csv = slurp(a / "run_64elem_seed7.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), kMetricsHeader);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 30 * 4);
    const auto grid = slurp(a / "run_64elem_seed7_grid.csv");
    EXPECT_EQ(std::count(grid.begin(), grid.end(), '\n'), 1 + 64);

    const auto meta = nlohmann::json::parse(slurp(a / "run_64elem_seed7.meta.json"));
    EXPECT_EQ(meta.at("seed"), 7);
    EXPECT_EQ(meta.at("version"), kVersion);
    EXPECT_EQ(from_json(meta.at("config")).antenna_elements, 64);
}

TEST_F(Cli, CoverageMapColumns)
{
    const auto cfg = write_config("quick.json", kQuick);
    const auto out = dir_ / "cov";
    ASSERT_EQ(call({"coverage-map", "--config", cfg, "--seed", "3", "--positions", "25", "--out", out.string()}), 0);
    EXPECT_EQ(listing(out), (std::vector<std::string>{"coverage-map_16-32-64-128elem_seed3.csv",
                                                      "coverage-map_16-32-64-128elem_seed3.meta.json"}));
    const auto csv = slurp(out / "coverage-map_16-32-64-128elem_seed3.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "x_m,y_m,rsrp_e16_dbm,rsrp_e32_dbm,rsrp_e64_dbm,rsrp_e128_dbm,rsrp_nbf_dbm");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
    const auto meta = nlohmann::json::parse(slurp(out / "coverage-map_16-32-64-128elem_seed3.meta.json"));
    EXPECT_EQ(meta.at("frequency_ghz"), 28.0);
}
