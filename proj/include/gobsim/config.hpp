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
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace gobsim
{
    /*!MD
    # Scenario configuration

    The scenario file is a JSON document. Every key is optional; omitted keys
    take the defaults below (the 3-site, 3-sector, 3.5 GHz / 40 MHz desk
    scenario). Unknown keys are rejected.

    | key                       | unit  | default            |
    |---------------------------|-------|--------------------|
    | `num_sites`               |       | 3                  |
    | `sectors_per_site`        |       | 3                  |
    | `inter_site_distance`     | m     | 500                |
    | `bs_height`, `ue_height`  | m     | 25, 1.5            |
    | `bs_tx_power`             | dBm   | 43                 |
    | `ue_tx_power`             | dBm   | 23 (carried only)  |
    | `carrier_frequency`       | GHz   | 3.5                |
    | `bandwidth`               | MHz   | 40                 |
    | `subcarrier_spacing`      | kHz   | 30                 |
    | `antenna_elements`        |       | 64                 |
    | `element_sweep`           |       | [16, 32, 64, 128]  |
    | `num_ues`                 |       | 15                 |
    | `ue_speed_range`          | km/h  | [3, 30]            |
    | `indoor_fraction`         |       | 0.5                |
    | `sim_duration`            | s     | 60                 |
    | `time_step`               | s     | 0.1                |
    | `rng_seed`                |       | 1                  |

    Nested objects `rrm`, `handover`, `traffic`, `antenna` and `channel` are
    documented on their structs. Thresholds that may be infinite are written
    as `null`.
    MD!*/

    struct RrmConfig
    {
        int n_best_beams = 4;                    // N, per cell
        double abs_threshold = -110.0;           // dBm, consolidation threshold (null = -inf)
        int l1_window = 5;                       // samples
        int l3_k = 4;                            // a = 1/2^(k/4)
        int report_max_beams = 4;                // beam entries per cell in a report
        double ue_detectable_threshold = -120.0; // dBm (null = -inf)
        double sweep_period = 0.02;              // s

        bool operator==(const RrmConfig &) const = default;
    };

    struct HandoverConfig
    {
        double hysteresis = 3.0;            // dB (null = +inf, never triggers)
        double time_to_trigger = 0.16;      // s
        double prep_delay = 0.05;           // s
        double exec_interruption = 0.03;    // s
        double pingpong_window = 1.0;       // s
        double fail_rsrp_threshold = -120.0; // dBm

        bool operator==(const HandoverConfig &) const = default;
    };

    struct TrafficConfig
    {
        double file_size = 200.0;     // Mbit
        int num_chunks = 10;
        double chunk_size = 20.0;     // Mbit
        double chunk_interval = 1.5;  // s, completion to next start
        double start_spread = 1.5;    // s, session start drawn in [0, start_spread]

        bool operator==(const TrafficConfig &) const = default;
    };

    // Parabolic sector element pattern.
    struct ElementPatternConfig
    {
        double max_gain_dbi = 8.0;
        double theta_3db_deg = 65.0;
        double phi_3db_deg = 65.0;
        double max_attenuation_db = 30.0; // A_m
        double side_lobe_v_db = 30.0;     // SLA_v

        bool operator==(const ElementPatternConfig &) const = default;
    };

    struct AntennaConfig
    {
        // element count -> {rows, cols}
        std::map<int, std::array<int, 2>> array_shapes{
            {1, {1, 1}}, {16, {2, 8}}, {32, {4, 8}}, {64, {8, 8}}, {128, {8, 16}}};
        double vertical_spacing = 0.5;   // wavelengths
        double horizontal_spacing = 0.5; // wavelengths
        ElementPatternConfig element{};
        double electrical_tilt_deg = 6.0;  // zenith steering of single-row grids, below horizon
        double mechanical_tilt_deg = 0.0;  // panel downtilt
        double zenith_min_deg = 90.0;      // zenith steering span of multi-row grids
        double zenith_max_deg = 180.0;
        int zenith_beams = 0;              // 0 = one per row
        int azimuth_oversampling = 1;

        bool operator==(const AntennaConfig &) const = default;
    };

    enum class LosMode
    {
        Stochastic,
        ForceLos,
        ForceNlos,
    };

    struct ChannelConfig
    {
        bool shadowing = true;
        LosMode los_mode = LosMode::Stochastic;
        double shadow_sigma_los_db = 4.0;
        double shadow_sigma_nlos_db = 6.0;
        double decorrelation_los_m = 37.0;
        double decorrelation_nlos_m = 50.0;
        double wall_loss_db = 20.0;
        double depth_loss_db_per_m = 0.5;
        double max_indoor_depth_m = 25.0;
        double noise_figure_db = 7.0;
        double max_spectral_efficiency = 8.0; // bit/s/Hz

        bool operator==(const ChannelConfig &) const = default;
    };

    struct ScenarioConfig
    {
        int num_sites = 3;
        int sectors_per_site = 3;
        double inter_site_distance = 500.0;
        double bs_height = 25.0;
        double ue_height = 1.5;
        double bs_tx_power = 43.0;
        double ue_tx_power = 23.0;
        double carrier_frequency = 3.5;
        double bandwidth = 40.0;
        double subcarrier_spacing = 30.0;
        int antenna_elements = 64;
        std::vector<int> element_sweep{16, 32, 64, 128};
        int num_ues = 15;
        std::array<double, 2> ue_speed_range{3.0, 30.0};
        double indoor_fraction = 0.5;
        double sim_duration = 60.0;
        double time_step = 0.1;
        std::uint64_t rng_seed = 1;
        RrmConfig rrm{};
        HandoverConfig handover{};
        TrafficConfig traffic{};
        AntennaConfig antenna{};
        ChannelConfig channel{};

        bool operator==(const ScenarioConfig &) const = default;
    };

    class ConfigError : public std::runtime_error
    {
    public:
        enum class Kind
        {
            Syntax,
            Validation,
        };

        ConfigError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        Kind kind() const { return kind_; }

    private:
        Kind kind_;
    };

    // Downlink resource blocks for a channel bandwidth / subcarrier spacing pair.
    // Returns 0 for combinations without a table entry.
    inline int resource_blocks(double bandwidth_mhz, double scs_khz)
    {
        struct Entry
        {
            int scs, bw, nrb;
        };
        static constexpr Entry table[] = {
            {15, 5, 25}, {15, 10, 52}, {15, 15, 79}, {15, 20, 106}, {15, 25, 133}, {15, 30, 160}, {15, 40, 216}, {15, 50, 270},
            {30, 5, 11}, {30, 10, 24}, {30, 15, 38}, {30, 20, 51}, {30, 25, 65}, {30, 30, 78}, {30, 40, 106}, {30, 50, 133},
            {30, 60, 162}, {30, 70, 189}, {30, 80, 217}, {30, 90, 245}, {30, 100, 273},
            {60, 10, 11}, {60, 15, 18}, {60, 20, 24}, {60, 25, 31}, {60, 30, 38}, {60, 40, 51}, {60, 50, 65}, {60, 60, 79},
            {60, 70, 93}, {60, 80, 107}, {60, 90, 121}, {60, 100, 135}, {60, 200, 264},
            {120, 50, 32}, {120, 100, 66}, {120, 200, 132}, {120, 400, 264}};
        for (const auto &e : table)
            if (std::abs(e.scs - scs_khz) < 1e-9 && std::abs(e.bw - bandwidth_mhz) < 1e-9)
                return e.nrb;
        return 0;
    }

    namespace detail
    {
        using nlohmann::json;

        [[noreturn]] inline void fail(const std::string &msg)
        {
            throw ConfigError(ConfigError::Kind::Validation, msg);
        }

        inline void require(bool ok, const std::string &invariant)
        {
            if (!ok)
                fail("validation error: " + invariant);
        }

        // Reads typed members out of a JSON object and rejects keys nobody asked for.
        class ObjectReader
        {
        public:
            ObjectReader(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    fail("expected an object at '" + (path_.empty() ? std::string("<root>") : path_) + "'");
            }

            template <typename T>
            void get(const char *key, T &out)
            {
                seen_.insert(key);
                auto it = j_.find(key);
                if (it == j_.end())
                    return;
                read(*it, name(key), out);
            }

            // A null value maps to `null_value` (used for infinite thresholds).
            void get_nullable(const char *key, double &out, double null_value)
            {
                seen_.insert(key);
                auto it = j_.find(key);
                if (it == j_.end())
                    return;
                if (it->is_null())
                    out = null_value;
                else
                    read(*it, name(key), out);
            }

            const json *child(const char *key)
            {
                seen_.insert(key);
                auto it = j_.find(key);
                return it == j_.end() ? nullptr : &*it;
            }

            std::string name(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

            void finish() const
            {
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!seen_.count(it.key()))
                        fail("unknown key '" + name(it.key().c_str()) + "'");
            }

        private:
            static void read(const json &v, const std::string &name, double &out)
            {
                if (!v.is_number())
                    fail("expected a number at '" + name + "'");
                out = v.get<double>();
            }
            static void read(const json &v, const std::string &name, int &out)
            {
                if (!v.is_number_integer())
                    fail("expected an integer at '" + name + "'");
                out = v.get<int>();
            }
            static void read(const json &v, const std::string &name, std::uint64_t &out)
            {
                if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
                    fail("expected a non-negative integer at '" + name + "'");
                out = v.get<std::uint64_t>();
            }
            static void read(const json &v, const std::string &name, bool &out)
            {
                if (!v.is_boolean())
                    fail("expected a boolean at '" + name + "'");
                out = v.get<bool>();
            }
            static void read(const json &v, const std::string &name, std::array<double, 2> &out)
            {
                if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                    fail("expected [number, number] at '" + name + "'");
                out = {v[0].get<double>(), v[1].get<double>()};
            }
            static void read(const json &v, const std::string &name, std::vector<int> &out)
            {
                if (!v.is_array())
                    fail("expected an array of integers at '" + name + "'");
                out.clear();
                for (const auto &e : v)
                {
                    if (!e.is_number_integer())
                        fail("expected an array of integers at '" + name + "'");
                    out.push_back(e.get<int>());
                }
            }
            static void read(const json &v, const std::string &name, LosMode &out)
            {
                static const std::map<std::string, LosMode> modes{
                    {"stochastic", LosMode::Stochastic}, {"los", LosMode::ForceLos}, {"nlos", LosMode::ForceNlos}};
                if (!v.is_string() || !modes.count(v.get<std::string>()))
                    fail("expected one of \"stochastic\", \"los\", \"nlos\" at '" + name + "'");
                out = modes.at(v.get<std::string>());
            }
            static void read(const json &v, const std::string &name, std::map<int, std::array<int, 2>> &out)
            {
                if (!v.is_object())
                    fail("expected an object of \"E\": [rows, cols] at '" + name + "'");
                out.clear();
                for (auto it = v.begin(); it != v.end(); ++it)
                {
                    int elements = 0;
                    try
                    {
                        std::size_t used = 0;
                        elements = std::stoi(it.key(), &used);
                        if (used != it.key().size())
                            throw std::invalid_argument(it.key());
                    }
                    catch (const std::exception &)
                    {
                        fail("expected an integer element count key at '" + name + "." + it.key() + "'");
                    }
                    const auto &s = it.value();
                    if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
                        fail("expected [rows, cols] at '" + name + "." + it.key() + "'");
                    out[elements] = {s[0].get<int>(), s[1].get<int>()};
                }
            }

            const json &j_;
            std::string path_;
            std::set<std::string> seen_;
        };

        inline json nullable(double v)
        {
            return std::isinf(v) ? json(nullptr) : json(v);
        }

        inline std::string los_mode_name(LosMode m)
        {
            switch (m)
            {
            case LosMode::ForceLos:
                return "los";
            case LosMode::ForceNlos:
                return "nlos";
            default:
                return "stochastic";
            }
        }
    }

    // Checks every invariant; throws ConfigError naming the first one violated.
    inline void validate(const ScenarioConfig &c)
    {
        using detail::require;
        require(c.num_sites >= 1 && c.num_sites <= 3, "num_sites in [1, 3]");
        require(c.sectors_per_site >= 1, "sectors_per_site >= 1");
        require(c.inter_site_distance > 0.0, "inter_site_distance > 0");
        require(c.ue_height > 0.0, "ue_height > 0");
        require(c.bs_height > c.ue_height, "bs_height > ue_height");
        require(c.carrier_frequency > 0.0, "carrier_frequency > 0");
        require(resource_blocks(c.bandwidth, c.subcarrier_spacing) > 0,
                "bandwidth/subcarrier_spacing is a tabulated NR channel bandwidth");
        require(c.num_ues >= 0, "num_ues >= 0");
        require(c.ue_speed_range[0] >= 0.0 && c.ue_speed_range[1] >= 0.0, "ue_speed_range >= 0");
        require(c.ue_speed_range[0] <= c.ue_speed_range[1], "ue_speed_range min <= max");
        require(c.indoor_fraction >= 0.0 && c.indoor_fraction <= 1.0, "indoor_fraction in [0,1]");
        require(c.time_step > 0.0, "time_step > 0");
        require(c.sim_duration >= 0.0, "sim_duration >= 0");
        require(!c.element_sweep.empty(), "element_sweep not empty");
        require(std::find(c.element_sweep.begin(), c.element_sweep.end(), c.antenna_elements) != c.element_sweep.end(),
                "antenna_elements in element_sweep");

        const auto &a = c.antenna;
        for (int e : c.element_sweep)
        {
            auto it = a.array_shapes.find(e);
            require(it != a.array_shapes.end(), "antenna.array_shapes has an entry for " + std::to_string(e) + " elements");
            require(it->second[0] >= 1 && it->second[1] >= 1, "array rows >= 1 and cols >= 1");
            require(it->second[0] * it->second[1] == e, "array rows x cols == " + std::to_string(e));
        }
        require(a.vertical_spacing > 0.0 && a.horizontal_spacing > 0.0, "antenna element spacing > 0");
        require(a.zenith_min_deg >= 0.0 && a.zenith_max_deg <= 180.0 && a.zenith_min_deg < a.zenith_max_deg,
                "0 <= antenna.zenith_min_deg < antenna.zenith_max_deg <= 180");
        require(a.zenith_beams >= 0, "antenna.zenith_beams >= 0");
        require(a.azimuth_oversampling >= 1, "antenna.azimuth_oversampling >= 1");
        require(a.element.theta_3db_deg > 0.0 && a.element.phi_3db_deg > 0.0, "element 3 dB beamwidths > 0");
        require(a.element.max_attenuation_db >= 0.0 && a.element.side_lobe_v_db >= 0.0, "element attenuation limits >= 0");

        const auto &ch = c.channel;
        require(ch.shadow_sigma_los_db >= 0.0 && ch.shadow_sigma_nlos_db >= 0.0, "channel shadow sigma >= 0");
        require(ch.decorrelation_los_m > 0.0 && ch.decorrelation_nlos_m > 0.0, "channel decorrelation distance > 0");
        require(ch.wall_loss_db >= 0.0 && ch.depth_loss_db_per_m >= 0.0 && ch.max_indoor_depth_m >= 0.0,
                "channel penetration parameters >= 0");
        require(ch.max_spectral_efficiency > 0.0, "channel.max_spectral_efficiency > 0");

        const auto &r = c.rrm;
        require(r.n_best_beams >= 1, "rrm.n_best_beams >= 1");
        require(r.report_max_beams >= 0 && r.report_max_beams <= r.n_best_beams, "rrm.report_max_beams <= rrm.n_best_beams");
        require(r.l1_window >= 1, "rrm.l1_window >= 1");
        require(r.l3_k >= 0, "rrm.l3_k >= 0");
        require(r.sweep_period > 0.0, "rrm.sweep_period > 0");

        const auto &h = c.handover;
        require(h.hysteresis >= 0.0, "handover.hysteresis >= 0");
        require(h.time_to_trigger >= 0.0, "handover.time_to_trigger >= 0");
        require(h.prep_delay >= 0.0 && h.exec_interruption >= 0.0, "handover delays >= 0");
        require(h.pingpong_window > 0.0, "handover.pingpong_window > 0");

        const auto &t = c.traffic;
        require(t.num_chunks >= 1 && t.chunk_size > 0.0, "traffic.num_chunks >= 1 and traffic.chunk_size > 0");
        require(std::abs(t.num_chunks * t.chunk_size - t.file_size) <= 1e-9 * t.file_size,
                "traffic.num_chunks * traffic.chunk_size == traffic.file_size");
        require(t.chunk_interval > 0.0, "traffic.chunk_interval > 0");
        require(t.start_spread >= 0.0, "traffic.start_spread >= 0");
    }

    inline nlohmann::json to_json(const ScenarioConfig &c)
    {
        using detail::nullable;
        nlohmann::json shapes = nlohmann::json::object();
        for (const auto &[e, s] : c.antenna.array_shapes)
            shapes[std::to_string(e)] = {s[0], s[1]};

        const auto &a = c.antenna;
        const auto &ch = c.channel;
        return {
            {"num_sites", c.num_sites},
            {"sectors_per_site", c.sectors_per_site},
            {"inter_site_distance", c.inter_site_distance},
            {"bs_height", c.bs_height},
            {"ue_height", c.ue_height},
            {"bs_tx_power", c.bs_tx_power},
            {"ue_tx_power", c.ue_tx_power},
            {"carrier_frequency", c.carrier_frequency},
            {"bandwidth", c.bandwidth},
            {"subcarrier_spacing", c.subcarrier_spacing},
            {"antenna_elements", c.antenna_elements},
            {"element_sweep", c.element_sweep},
            {"num_ues", c.num_ues},
            {"ue_speed_range", {c.ue_speed_range[0], c.ue_speed_range[1]}},
            {"indoor_fraction", c.indoor_fraction},
            {"sim_duration", c.sim_duration},
            {"time_step", c.time_step},
            {"rng_seed", c.rng_seed},
            {"rrm",
             {{"n_best_beams", c.rrm.n_best_beams},
              {"abs_threshold", nullable(c.rrm.abs_threshold)},
              {"l1_window", c.rrm.l1_window},
              {"l3_k", c.rrm.l3_k},
              {"report_max_beams", c.rrm.report_max_beams},
              {"ue_detectable_threshold", nullable(c.rrm.ue_detectable_threshold)},
              {"sweep_period", c.rrm.sweep_period}}},
            {"handover",
             {{"hysteresis", nullable(c.handover.hysteresis)},
              {"time_to_trigger", c.handover.time_to_trigger},
              {"prep_delay", c.handover.prep_delay},
              {"exec_interruption", c.handover.exec_interruption},
              {"pingpong_window", c.handover.pingpong_window},
              {"fail_rsrp_threshold", c.handover.fail_rsrp_threshold}}},
            {"traffic",
             {{"file_size", c.traffic.file_size},
              {"num_chunks", c.traffic.num_chunks},
              {"chunk_size", c.traffic.chunk_size},
              {"chunk_interval", c.traffic.chunk_interval},
              {"start_spread", c.traffic.start_spread}}},
            {"antenna",
             {{"array_shapes", shapes},
              {"vertical_spacing", a.vertical_spacing},
              {"horizontal_spacing", a.horizontal_spacing},
              {"element",
               {{"max_gain_dbi", a.element.max_gain_dbi},
                {"theta_3db_deg", a.element.theta_3db_deg},
                {"phi_3db_deg", a.element.phi_3db_deg},
                {"max_attenuation_db", a.element.max_attenuation_db},
                {"side_lobe_v_db", a.element.side_lobe_v_db}}},
              {"electrical_tilt_deg", a.electrical_tilt_deg},
              {"mechanical_tilt_deg", a.mechanical_tilt_deg},
              {"zenith_min_deg", a.zenith_min_deg},
              {"zenith_max_deg", a.zenith_max_deg},
              {"zenith_beams", a.zenith_beams},
              {"azimuth_oversampling", a.azimuth_oversampling}}},
            {"channel",
             {{"shadowing", ch.shadowing},
              {"los_mode", detail::los_mode_name(ch.los_mode)},
              {"shadow_sigma_los_db", ch.shadow_sigma_los_db},
              {"shadow_sigma_nlos_db", ch.shadow_sigma_nlos_db},
              {"decorrelation_los_m", ch.decorrelation_los_m},
              {"decorrelation_nlos_m", ch.decorrelation_nlos_m},
              {"wall_loss_db", ch.wall_loss_db},
              {"depth_loss_db_per_m", ch.depth_loss_db_per_m},
              {"max_indoor_depth_m", ch.max_indoor_depth_m},
              {"noise_figure_db", ch.noise_figure_db},
              {"max_spectral_efficiency", ch.max_spectral_efficiency}}},
        };
    }

    // Builds a validated config from an already-parsed JSON value.
    inline ScenarioConfig from_json(const nlohmann::json &j)
    {
        ScenarioConfig c;
        const nlohmann::json empty = nlohmann::json::object();
        detail::ObjectReader root(j.is_null() ? empty : j, "");
        root.get("num_sites", c.num_sites);
        root.get("sectors_per_site", c.sectors_per_site);
        root.get("inter_site_distance", c.inter_site_distance);
        root.get("bs_height", c.bs_height);
        root.get("ue_height", c.ue_height);
        root.get("bs_tx_power", c.bs_tx_power);
        root.get("ue_tx_power", c.ue_tx_power);
        root.get("carrier_frequency", c.carrier_frequency);
        root.get("bandwidth", c.bandwidth);
        root.get("subcarrier_spacing", c.subcarrier_spacing);
        root.get("antenna_elements", c.antenna_elements);
        root.get("element_sweep", c.element_sweep);
        root.get("num_ues", c.num_ues);
        root.get("ue_speed_range", c.ue_speed_range);
        root.get("indoor_fraction", c.indoor_fraction);
        root.get("sim_duration", c.sim_duration);
        root.get("time_step", c.time_step);
        root.get("rng_seed", c.rng_seed);

        if (const auto *v = root.child("rrm"))
        {
            detail::ObjectReader r(*v, "rrm");
            r.get("n_best_beams", c.rrm.n_best_beams);
            r.get_nullable("abs_threshold", c.rrm.abs_threshold, kNegInf);
            r.get("l1_window", c.rrm.l1_window);
            r.get("l3_k", c.rrm.l3_k);
            r.get("report_max_beams", c.rrm.report_max_beams);
            r.get_nullable("ue_detectable_threshold", c.rrm.ue_detectable_threshold, kNegInf);
            r.get("sweep_period", c.rrm.sweep_period);
            r.finish();
        }
        if (const auto *v = root.child("handover"))
        {
            detail::ObjectReader r(*v, "handover");
            r.get_nullable("hysteresis", c.handover.hysteresis, kPosInf);
            r.get("time_to_trigger", c.handover.time_to_trigger);
            r.get("prep_delay", c.handover.prep_delay);
            r.get("exec_interruption", c.handover.exec_interruption);
            r.get("pingpong_window", c.handover.pingpong_window);
            r.get("fail_rsrp_threshold", c.handover.fail_rsrp_threshold);
            r.finish();
        }
        if (const auto *v = root.child("traffic"))
        {
            detail::ObjectReader r(*v, "traffic");
            r.get("file_size", c.traffic.file_size);
            r.get("num_chunks", c.traffic.num_chunks);
            r.get("chunk_size", c.traffic.chunk_size);
            r.get("chunk_interval", c.traffic.chunk_interval);
            r.get("start_spread", c.traffic.start_spread);
            r.finish();
        }
        if (const auto *v = root.child("antenna"))
        {
            auto &a = c.antenna;
            detail::ObjectReader r(*v, "antenna");
            r.get("array_shapes", a.array_shapes);
            r.get("vertical_spacing", a.vertical_spacing);
            r.get("horizontal_spacing", a.horizontal_spacing);
            if (const auto *e = r.child("element"))
            {
                detail::ObjectReader er(*e, "antenna.element");
                er.get("max_gain_dbi", a.element.max_gain_dbi);
                er.get("theta_3db_deg", a.element.theta_3db_deg);
                er.get("phi_3db_deg", a.element.phi_3db_deg);
                er.get("max_attenuation_db", a.element.max_attenuation_db);
                er.get("side_lobe_v_db", a.element.side_lobe_v_db);
                er.finish();
            }
            r.get("electrical_tilt_deg", a.electrical_tilt_deg);
            r.get("mechanical_tilt_deg", a.mechanical_tilt_deg);
            r.get("zenith_min_deg", a.zenith_min_deg);
            r.get("zenith_max_deg", a.zenith_max_deg);
            r.get("zenith_beams", a.zenith_beams);
            r.get("azimuth_oversampling", a.azimuth_oversampling);
            r.finish();
        }
        if (const auto *v = root.child("channel"))
        {
            auto &ch = c.channel;
            detail::ObjectReader r(*v, "channel");
            r.get("shadowing", ch.shadowing);
            r.get("los_mode", ch.los_mode);
            r.get("shadow_sigma_los_db", ch.shadow_sigma_los_db);
            r.get("shadow_sigma_nlos_db", ch.shadow_sigma_nlos_db);
            r.get("decorrelation_los_m", ch.decorrelation_los_m);
            r.get("decorrelation_nlos_m", ch.decorrelation_nlos_m);
            r.get("wall_loss_db", ch.wall_loss_db);
            r.get("depth_loss_db_per_m", ch.depth_loss_db_per_m);
            r.get("max_indoor_depth_m", ch.max_indoor_depth_m);
            r.get("noise_figure_db", ch.noise_figure_db);
            r.get("max_spectral_efficiency", ch.max_spectral_efficiency);
            r.finish();
        }
        root.finish();
        validate(c);
        return c;
    }

    // Parses a scenario document. An empty (or whitespace-only) document yields the defaults.
    inline ScenarioConfig parse_config(std::string_view text)
    {
        if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
        {
            ScenarioConfig c;
            validate(c);
            return c;
        }
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ConfigError(ConfigError::Kind::Syntax,
                              "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
        }
        return from_json(j);
    }

    inline std::string serialize_config(const ScenarioConfig &c, int indent = 2)
    {
        return to_json(c).dump(indent);
    }

    // Stable 64-bit FNV-1a hash of the canonical serialization.
    inline std::uint64_t config_hash(const ScenarioConfig &c)
    {
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char ch : to_json(c).dump())
        {
            h ^= ch;
            h *= 1099511628211ull;
        }
        return h;
    }
}
