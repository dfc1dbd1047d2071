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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hmimo/experiment.hpp"
#include "hmimo/matrix_cache.hpp"
#include "hmimo/parallel.hpp"

namespace
{
    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw hmimo::Error(hmimo::Errc::IoError, "cannot read " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string env_or(const char *name, const std::string &fallback)
    {
        const char *v = std::getenv(name);
        return (v != nullptr && *v != '\0') ? std::string(v) : fallback;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"hmimo: holographic MIMO uplink sweeps"};
    app.require_subcommand(1);

    std::string config_path, output_override;
    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
    sweep->add_option("config", config_path, "JSON configuration file")->required();
    sweep->add_option("-o,--output", output_override, "CSV path (overrides the config)");

    std::string csv_path, svg_path;
    auto *plot = app.add_subcommand("plot", "Render a sweep CSV as SVG");
    plot->add_option("csv", csv_path, "Sweep CSV")->required();
    plot->add_option("out", svg_path, "Output SVG path")->required();

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Parse and validate a configuration");
    validate->add_option("config", validate_path, "JSON configuration file")->required();

    std::string cache_dir;
    auto *cache = app.add_subcommand("cache", "Manage the matrix cache");
    cache->require_subcommand(1);
    auto *clear = cache->add_subcommand("clear", "Remove cached matrices");
    clear->add_option("--dir", cache_dir, "Cache directory (default: HMIMO_CACHE_DIR or .hmimo-cache)");

    CLI11_PARSE(app, argc, argv);
    hmimo::configure_threads_from_env();

    try
    {
        if (*sweep)
        {
            hmimo::SweepConfig cfg = hmimo::load_config(config_path);
            if (!output_override.empty())
                cfg.output = output_override;
            if (cfg.cache_dir.empty())
                cfg.cache_dir = env_or("HMIMO_CACHE_DIR", "");
            const auto rows = hmimo::run_sweep(cfg);
            if (cfg.output.empty())
                std::cout << hmimo::format_csv(rows);
            else
                std::cerr << "wrote " << rows.size() << " rows to " << cfg.output << "\n";
        }
        else if (*plot)
        {
            hmimo::emit_plot(hmimo::parse_csv(read_file(csv_path)), svg_path);
        }
        else if (*validate)
        {
            const hmimo::SweepConfig cfg = hmimo::load_config(validate_path);
            for (double v : cfg.values)
                hmimo::validate_scenario(hmimo::scenario_at(cfg, v));
            std::cout << "ok: " << cfg.values.size() << " sweep points, " << cfg.schemes.size() << " schemes\n";
        }
        else if (*cache)
        {
            const std::string dir = cache_dir.empty() ? env_or("HMIMO_CACHE_DIR", ".hmimo-cache") : cache_dir;
            std::cout << "removed " << hmimo::MatrixCache::clear(dir) << " cached matrices from " << dir << "\n";
        }
    }
    catch (const hmimo::Error &e)
    {
        std::cerr << "error: " << e.name() << ": " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
