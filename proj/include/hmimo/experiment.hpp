// SPDX-License-Identifier: Apache-2.0
//
// hmimo: wavenumber-domain uplink simulation for holographic MIMO surfaces
// Copyright (C) 2026 The hmimo contributors
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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hmimo/coupling.hpp"
#include "hmimo/em_fields.hpp"
#include "hmimo/geometry.hpp"
#include "hmimo/optimizer.hpp"

namespace hmimo
{
    enum class SweepAxis
    {
        TotalPower,
        Frequency,
        Distance,
        TxSize,
        RxSize
    };

    enum class Scheme
    {
        Proposed,
        Equal,
        Discrete,
        Optimal
    };

    enum class NoiseMode
    {
        HwOnly,
        HwPlusEmi
    };

    const char *to_string(SweepAxis a);
    const char *to_string(Scheme s);
    const char *to_string(NoiseMode n);

    // Either a semicircle layout or an explicit list of users.
    struct UserLayout
    {
        int count = 4;
        double radius = 75.0;
        double length_h = 0.06;
        double length_v = 0.06;
        double angle_jitter = 0.0;
        std::vector<UserSpec> explicit_users;
        bool has_explicit_power = false;

        bool is_explicit() const { return !explicit_users.empty(); }
    };

    struct SweepConfig
    {
        double frequency = 10e9;
        double sigma_emi2 = 5.6e-6;
        double n0_half = 5.6e-6;
        ApertureSpec rx;
        UserLayout users;
        double total_power = 1e-4;

        SweepAxis axis = SweepAxis::TotalPower;
        std::vector<double> values;
        std::vector<Scheme> schemes;
        NoiseMode noise = NoiseMode::HwPlusEmi;

        QuadratureSpec quadrature;
        AngularQuadSpec angular;
        double optimal_grid_per_wavelength = 4.0;
        IwfOptions optimizer;
        bool prune_evanescent = false;

        std::uint64_t seed = 1;
        std::string output;
        std::string cache_dir;
        bool record_timing = false;

        SweepConfig();
    };

    // JSON configuration. Unknown keys and malformed text raise ParseError;
    // out-of-range values raise ValidationError naming the field.
    SweepConfig parse_config(std::string_view text);
    SweepConfig load_config(const std::filesystem::path &path);

    // Users at angles (2k - 1) pi / (2K) in the x-z half plane z > 0, each
    // facing the receiver center. offsets perturb the angles when given.
    std::vector<ApertureSpec> place_users_semicircle(int K, double radius, const ApertureSpec &rx, double length_h,
                                                     double length_v, const std::vector<double> &offsets = {});

    // Scenario for one sweep point with per-user budgets applied.
    Scenario scenario_at(const SweepConfig &cfg, double axis_value);

    struct ResultRow
    {
        std::string scenario_id;
        std::string scheme;
        std::string axis;
        double axis_value = 0.0;
        double sum_se = 0.0;
        int iterations = 0;
        std::string converged;
        std::optional<double> wall_time_s;
    };

    // Runs every (axis value, scheme) pair in that order. Failures become rows
    // with sum_se = nan and converged = "error:<Name>". Writes cfg.output
    // when it is non-empty.
    std::vector<ResultRow> run_sweep(const SweepConfig &cfg);

    std::string csv_header();
    std::string format_csv(const std::vector<ResultRow> &rows);
    std::vector<ResultRow> parse_csv(std::string_view text);
    void write_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path);

    std::string render_svg(const std::vector<ResultRow> &rows);
    void emit_plot(const std::vector<ResultRow> &rows, const std::filesystem::path &path);
}
