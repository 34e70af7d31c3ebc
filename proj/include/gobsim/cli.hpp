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

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coverage.hpp"
#include "engine.hpp"

namespace gobsim::cli
{
    enum ExitCode
    {
        Ok = 0,
        ValidationFailed = 1,
        UsageError = 2,
    };

    struct Invocation
    {
        std::string command;
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::string output_dir = "out";
        std::vector<int> elements;
        std::optional<double> freq;
        int positions = 1000;
        double resolution = 0.0;
        bool parallel = false;
    };

    // Output file stem: <command>_<E>elem_seed<seed>. A coverage map spans a sweep, written
    // as e.g. 16-32-64-128.
    inline std::string output_stem(const std::string &command, const std::vector<int> &elements, std::uint64_t seed)
    {
        std::string e;
        for (std::size_t i = 0; i < elements.size(); ++i)
            e += (i ? "-" : "") + std::to_string(elements[i]);
        return command + "_" + e + "elem_seed" + std::to_string(seed);
    }

    inline ScenarioConfig effective_config(const Invocation &inv)
    {
        std::ifstream in(inv.config_path, std::ios::binary);
        if (!in)
            throw ConfigError(ConfigError::Kind::Validation, "cannot read config file '" + inv.config_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        auto cfg = parse_config(ss.str());
        if (inv.seed)
            cfg.rng_seed = *inv.seed;
        if (!inv.elements.empty())
        {
            cfg.element_sweep = inv.elements;
            if (std::find(inv.elements.begin(), inv.elements.end(), cfg.antenna_elements) == inv.elements.end())
                cfg.antenna_elements = inv.elements.front();
        }
        validate(cfg);
        return cfg;
    }

    inline nlohmann::json metadata(const std::string &command, const ScenarioConfig &cfg)
    {
        char hash[17];
        std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
        return {{"artifact", "gobsim"},
                {"version", kVersion},
                {"command", command},
                {"seed", cfg.rng_seed},
                {"config_hash", hash},
                {"config", to_json(cfg)}};
    }

    inline void write_file(const std::filesystem::path &p, const std::string &content)
    {
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write '" + p.string() + "'");
        out << content;
    }

    inline int run_command(const Invocation &inv, const ScenarioConfig &cfg, std::ostream &out)
    {
        const std::filesystem::path dir(inv.output_dir);
        std::filesystem::create_directories(dir);

        std::vector<ScenarioConfig> runs;
        for (int e : cfg.element_sweep)
        {
            auto c = cfg;
            c.antenna_elements = e;
            runs.push_back(c);
        }

        std::vector<MetricsLog> logs(runs.size());
        if (inv.parallel)
        {
            std::vector<std::future<MetricsLog>> jobs;
            for (const auto &c : runs)
                jobs.push_back(std::async(std::launch::async, [c] { return run(c); }));
            for (std::size_t i = 0; i < jobs.size(); ++i)
                logs[i] = jobs[i].get();
        }
        else
            for (std::size_t i = 0; i < runs.size(); ++i)
                logs[i] = run(runs[i]);

        for (std::size_t i = 0; i < runs.size(); ++i)
        {
            const auto &c = runs[i];
            const auto stem = output_stem("run", {c.antenna_elements}, c.rng_seed);
            std::ostringstream metrics, events, grid;
            write_metrics_csv(metrics, logs[i].samples);
            write_events_csv(events, logs[i].events);
            write_grid_csv(grid, build_grid(ArrayGeometry::from_config(c.antenna, c.antenna_elements), c.antenna));
            write_file(dir / (stem + ".csv"), metrics.str());
            write_file(dir / (stem + "_events.csv"), events.str());
            write_file(dir / (stem + "_grid.csv"), grid.str());
            write_file(dir / (stem + ".meta.json"), metadata("run", c).dump(2) + "\n");
            out << stem << ": " << logs[i].samples.size() << " samples, " << logs[i].events.size()
                << " handover events\n";
        }
        return Ok;
    }

    inline int coverage_command(const Invocation &inv, const ScenarioConfig &cfg, std::ostream &out)
    {
        CoverageSpec spec;
        spec.frequency_ghz = inv.freq.value_or(28.0);
        spec.elements = cfg.element_sweep;
        if (inv.resolution > 0.0)
        {
            const DeploymentArea area(cfg);
            spec.positions.reset();
            spec.lo = area.lo();
            spec.hi = area.hi();
            spec.resolution = inv.resolution;
        }
        else
            spec.positions = inv.positions;

        const auto map = coverage_map(cfg, spec);
        const std::filesystem::path dir(inv.output_dir);
        std::filesystem::create_directories(dir);
        const auto stem = output_stem("coverage-map", spec.elements, cfg.rng_seed);
        std::ostringstream csv;
        write_coverage_csv(csv, map);
        write_file(dir / (stem + ".csv"), csv.str());
        auto meta = metadata("coverage-map", cfg);
        meta["frequency_ghz"] = spec.frequency_ghz;
        write_file(dir / (stem + ".meta.json"), meta.dump(2) + "\n");
        out << stem << ": " << map.rows.size() << " positions\n";
        return Ok;
    }

    // Entry point; returns the process exit code (0 ok, 1 invalid config, 2 usage error).
    inline int main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
    {
        Invocation inv;
        CLI::App app{"gobsim: grid-of-beams mobility simulator for 5G NR macro deployments"};
        app.require_subcommand(1);

        auto common = [&](CLI::App *sub) {
            sub->add_option("--config", inv.config_path, "scenario file (JSON)")->required();
            sub->add_option("--seed", inv.seed, "override rng_seed");
            sub->add_option("--out", inv.output_dir, "output directory")->capture_default_str();
            sub->add_option("--elements", inv.elements, "element-count sweep, e.g. 16,32,64,128")->delimiter(',');
        };
        auto *run_cmd = app.add_subcommand("run", "simulate once per element count and write CSVs");
        common(run_cmd);
        run_cmd->add_flag("--parallel", inv.parallel, "run the element sweep concurrently");
        auto *cov_cmd = app.add_subcommand("coverage-map", "write a best-beam RSRP coverage map");
        common(cov_cmd);
        cov_cmd->add_option("--freq", inv.freq, "carrier frequency in GHz (default 28)");
        cov_cmd->add_option("--positions", inv.positions, "number of random positions")->capture_default_str();
        cov_cmd->add_option("--resolution", inv.resolution, "lattice spacing in m (overrides --positions)");
        auto *val_cmd = app.add_subcommand("validate", "parse and validate a scenario, print the effective config");
        common(val_cmd);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? Ok : UsageError;
        }
        if (inv.freq && !(*inv.freq > 0.0))
        {
            err << "error: --freq must be > 0\n";
            return UsageError;
        }
        if (inv.positions < 0)
        {
            err << "error: --positions must be >= 0\n";
            return UsageError;
        }
        for (const auto *sub : app.get_subcommands())
            inv.command = sub->get_name();

        ScenarioConfig cfg;
        try
        {
            cfg = effective_config(inv);
        }
        catch (const ConfigError &e)
        {
            err << "error: " << e.what() << '\n';
            return ValidationFailed;
        }

        try
        {
            if (inv.command == "validate")
            {
                out << serialize_config(cfg) << '\n';
                return Ok;
            }
            if (inv.command == "run")
                return run_command(inv, cfg, out);
            return coverage_command(inv, cfg, out);
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return ValidationFailed;
        }
    }
}
