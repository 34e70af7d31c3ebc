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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace gobsim
{
    inline constexpr const char *kVersion = "1.0.0";

    // Thrown when a model function is evaluated outside its validity range.
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    enum class CellId : std::uint32_t
    {
    };
    enum class BeamId : std::uint32_t
    {
    };

    constexpr std::uint32_t index(CellId c) { return static_cast<std::uint32_t>(c); }
    constexpr std::uint32_t index(BeamId b) { return static_cast<std::uint32_t>(b); }

    // Cell and beam identify one beam of the whole network.
    struct BeamKey
    {
        CellId cell{};
        BeamId beam{};
        auto operator<=>(const BeamKey &) const = default;
    };

    struct Vec2
    {
        double x = 0.0;
        double y = 0.0;

        constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
        constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
        constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
        constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
        constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
        double norm() const { return std::hypot(x, y); }
        bool operator==(const Vec2 &) const = default;
    };

    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

    constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
    constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }
    constexpr double kmh2ms(double kmh) { return kmh / 3.6; }

    inline double dbm2mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
    inline double mw2dbm(double mw) { return 10.0 * std::log10(mw); }

    // Wraps an angle in degrees to [-180, 180].
    inline double wrap180(double deg)
    {
        double w = std::fmod(deg + 180.0, 360.0);
        if (w < 0.0)
            w += 360.0;
        return w - 180.0;
    }

    using Rng = std::mt19937_64;

    // Independent, reproducible generator per (seed, stream, a, b) tuple.
    inline Rng make_stream(std::uint64_t seed, std::uint32_t stream, std::uint32_t a = 0, std::uint32_t b = 0)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream, a, b};
        return Rng(seq);
    }

    enum class Stream : std::uint32_t
    {
        Placement = 1,
        Mobility = 2,
        Channel = 3,
        Coverage = 4,
    };
}
