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

#include "hmimo/experiment.hpp"
#include "hmimo/benchmarks.hpp"
#include "hmimo/matrix_cache.hpp"
#include "hmimo/noise_model.hpp"
#include "hmimo/wavenumber_basis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hmimo
{
    using json = nlohmann::json;

    namespace
    {
        [[noreturn]] void parse_fail(const std::string &msg) { throw Error(Errc::ParseError, msg); }
        [[noreturn]] void invalid(const std::string &field, const std::string &msg)
        {
            throw Error(Errc::ValidationError, field + ": " + msg);
        }

        std::string join(const std::string &path, const std::string &key)
        {
            return path.empty() ? key : path + "." + key;
        }

        void allow_keys(const json &obj, const std::string &path, std::initializer_list<const char *> keys)
        {
            if (!obj.is_object())
                parse_fail("expected an object at " + (path.empty() ? std::string("top level") : path));
            const std::set<std::string> allowed(keys.begin(), keys.end());
            for (auto it = obj.begin(); it != obj.end(); ++it)
                if (!allowed.count(it.key()))
                    parse_fail("unknown key '" + join(path, it.key()) + "'");
        }

        double number(const json &obj, const std::string &path, const char *key, double fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_number())
                parse_fail("'" + join(path, key) + "' must be a number");
            return v.get<double>();
        }

        bool boolean(const json &obj, const std::string &path, const char *key, bool fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_boolean())
                parse_fail("'" + join(path, key) + "' must be true or false");
            return v.get<bool>();
        }

        std::string text(const json &obj, const std::string &path, const char *key, const std::string &fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_string())
                parse_fail("'" + join(path, key) + "' must be a string");
            return v.get<std::string>();
        }

        long long integer(const json &obj, const std::string &path, const char *key, long long fallback)
        {
            if (!obj.contains(key))
                return fallback;
            const json &v = obj.at(key);
            if (!v.is_number_integer())
                parse_fail("'" + join(path, key) + "' must be an integer");
            return v.get<long long>();
        }

        void positive(double v, const std::string &field)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                invalid(field, "must be positive and finite");
        }

        void non_negative(double v, const std::string &field)
        {
            if (!(v >= 0.0) || !std::isfinite(v))
                invalid(field, "must be non-negative and finite");
        }

        SweepAxis axis_from(const std::string &s)
        {
            if (s == "total_power") return SweepAxis::TotalPower;
            if (s == "frequency") return SweepAxis::Frequency;
            if (s == "distance") return SweepAxis::Distance;
            if (s == "tx_size") return SweepAxis::TxSize;
            if (s == "rx_size") return SweepAxis::RxSize;
            invalid("sweep.axis", "unknown axis '" + s + "'");
        }

        Scheme scheme_from(const std::string &s, const std::string &field)
        {
            if (s == "proposed") return Scheme::Proposed;
            if (s == "equal") return Scheme::Equal;
            if (s == "discrete") return Scheme::Discrete;
            if (s == "optimal") return Scheme::Optimal;
            invalid(field, "unknown scheme '" + s + "'");
        }

        std::size_t line_of(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1;
            for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
                if (text[i] == '\n')
                    ++line;
            return line;
        }

        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        std::string fmt_short(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            return buf;
        }

        std::string aperture_key(const ApertureSpec &a)
        {
            return fmt(a.center(0)) + "," + fmt(a.center(1)) + "," + fmt(a.center(2)) + "," + fmt(a.length_h) + "," +
                   fmt(a.length_v) + "," + fmt(a.yaw) + "," + fmt(a.pitch) + "," + fmt(a.roll);
        }

        std::string hex(std::uint64_t h)
        {
            char buf[20];
            std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
            return buf;
        }

        // In-process memo backed by the optional on-disk cache.
        class MatrixStore
        {
        public:
            explicit MatrixStore(const std::string &dir)
            {
                if (!dir.empty())
                    disk_.emplace(dir);
            }

            template <typename F>
            const CMatrix &get(const std::string &canonical, F &&compute)
            {
                const std::uint64_t key = content_hash(canonical);
                auto it = memo_.find(key);
                if (it != memo_.end())
                    return it->second;
                if (disk_)
                    if (auto m = disk_->load(key))
                        return memo_.emplace(key, std::move(*m)).first->second;
                CMatrix m = compute();
                if (disk_)
                    disk_->store(key, m);
                return memo_.emplace(key, std::move(m)).first->second;
            }

        private:
            std::map<std::uint64_t, CMatrix> memo_;
            std::optional<MatrixCache> disk_;
        };

        struct PointContext
        {
            const SweepConfig &cfg;
            const Scenario &sc;
            MatrixStore &store;
            PhysicalConstants k;
            std::vector<double> p_max;
            std::optional<ModeIndexSet> rx_modes;
            std::vector<CMatrix> H;
            std::optional<CMatrix> R_z;

            void build_fourier()
            {
                if (R_z)
                    return;
                validate_scenario(sc);
                rx_modes = mode_set(sc.rx.length_h, sc.rx.length_v, k.lambda, cfg.prune_evanescent);
                const std::string common = "f=" + fmt(sc.frequency) + "|rx=" + aperture_key(sc.rx) +
                                           "|prune=" + (cfg.prune_evanescent ? "1" : "0");
                for (std::size_t u = 0; u < sc.users.size(); ++u)
                {
                    const UserGeometry ug = UserGeometry::from(sc.users[u].aperture, k.lambda);
                    const ModeIndexSet tx = mode_set(ug.aligned.S_x, ug.aligned.S_y, k.lambda, cfg.prune_evanescent);
                    const std::string key = "coupling|v1|" + common + "|user=" + aperture_key(ug.spec) +
                                            "|q=" + std::to_string(cfg.quadrature.nodes_per_wavelength) +
                                            (cfg.quadrature.doubling_check ? "|dbl=" + fmt(cfg.quadrature.doubling_tolerance) : "");
                    H.push_back(store.get(key, [&] {
                        return assemble_coupling(ug, sc.rx, *rx_modes, tx, k, cfg.quadrature, u).H;
                    }));
                }
                if (sc.sigma_emi2 > 0.0)
                {
                    const auto &a = cfg.angular;
                    const std::string key = "emi|v1|" + common + "|ang=" + std::to_string(a.n_theta) + "," +
                                            std::to_string(a.n_phi) + "," + (a.scale_with_extent ? "1" : "0");
                    const CMatrix &R_emi = store.get(key, [&] {
                        return emi_covariance(*rx_modes, sc.rx.length_h, sc.rx.length_v, k, cfg.angular);
                    });
                    R_z = noise_covariance(R_emi, sc.sigma_emi2, sc.n0_half).R_z;
                }
                else
                {
                    const Eigen::Index n = 3 * static_cast<Eigen::Index>(rx_modes->size());
                    R_z = CMatrix::Identity(n, n) * sc.n0_half;
                }
            }

            AllocationResult run(Scheme s)
            {
                switch (s)
                {
                case Scheme::Proposed:
                    build_fourier();
                    return iterative_water_filling(H, *R_z, p_max, cfg.optimizer);
                case Scheme::Equal:
                {
                    build_fourier();
                    AllocationResult r;
                    r.covariances = equal_power_allocation(H, p_max);
                    r.sum_se = sum_rate(H, r.covariances, *R_z);
                    r.trace_per_iteration = {r.sum_se};
                    r.converged = true;
                    return r;
                }
                case Scheme::Discrete:
                    return discrete_benchmark_se(sc, DiscreteArraySpec::for_scenario(sc), p_max, cfg.angular,
                                                 cfg.optimizer);
                case Scheme::Optimal:
                    return optimal_decomposition_se(sc, cfg.optimal_grid_per_wavelength, p_max, cfg.angular,
                                                    cfg.optimizer);
                }
                throw Error(Errc::ValidationError, "unknown scheme");
            }
        };

        std::string scenario_id(const Scenario &s)
        {
            std::string c = "scenario|f=" + fmt(s.frequency) + "|rx=" + aperture_key(s.rx) + "|s2=" +
                            fmt(s.sigma_emi2) + "|n0=" + fmt(s.n0_half);
            for (const auto &u : s.users)
                c += "|u=" + aperture_key(u.aperture) + ":" + fmt(u.p_max);
            return hex(content_hash(c)).substr(0, 12);
        }
    }

    const char *to_string(SweepAxis a)
    {
        switch (a)
        {
        case SweepAxis::TotalPower: return "total_power";
        case SweepAxis::Frequency: return "frequency";
        case SweepAxis::Distance: return "distance";
        case SweepAxis::TxSize: return "tx_size";
        case SweepAxis::RxSize: return "rx_size";
        }
        return "unknown";
    }

    const char *to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::Proposed: return "proposed";
        case Scheme::Equal: return "equal";
        case Scheme::Discrete: return "discrete";
        case Scheme::Optimal: return "optimal";
        }
        return "unknown";
    }

    const char *to_string(NoiseMode n)
    {
        return n == NoiseMode::HwOnly ? "hw_only" : "hw_plus_emi";
    }

    SweepConfig::SweepConfig()
    {
        rx.length_h = 0.12;
        rx.length_v = 0.12;
        values = {1e-6, 1e-5, 1e-4, 1e-3};
        schemes = {Scheme::Proposed, Scheme::Equal};
    }

    SweepConfig parse_config(std::string_view src)
    {
        json doc;
        try
        {
            doc = json::parse(src.begin(), src.end());
        }
        catch (const json::parse_error &e)
        {
            parse_fail("syntax error at line " + std::to_string(line_of(src, e.byte)) + ": " + e.what());
        }

        allow_keys(doc, "", {"frequency_hz", "sigma_emi2", "n0_half", "noise_mode", "rx", "users", "total_power",
                             "sweep", "schemes", "quadrature", "optimizer", "prune_evanescent", "seed", "output",
                             "cache_dir", "record_timing"});
        SweepConfig c;
        c.frequency = number(doc, "", "frequency_hz", c.frequency);
        positive(c.frequency, "frequency_hz");
        c.sigma_emi2 = number(doc, "", "sigma_emi2", c.sigma_emi2);
        non_negative(c.sigma_emi2, "sigma_emi2");
        c.n0_half = number(doc, "", "n0_half", c.n0_half);
        positive(c.n0_half, "n0_half");

        const std::string nm = text(doc, "", "noise_mode", "hw_plus_emi");
        if (nm == "hw_only")
            c.noise = NoiseMode::HwOnly;
        else if (nm == "hw_plus_emi")
            c.noise = NoiseMode::HwPlusEmi;
        else
            invalid("noise_mode", "must be hw_only or hw_plus_emi");

        if (doc.contains("rx"))
        {
            const json &r = doc.at("rx");
            allow_keys(r, "rx", {"length_h", "length_v"});
            c.rx.length_h = number(r, "rx", "length_h", c.rx.length_h);
            c.rx.length_v = number(r, "rx", "length_v", c.rx.length_v);
        }
        positive(c.rx.length_h, "rx.length_h");
        positive(c.rx.length_v, "rx.length_v");

        c.total_power = number(doc, "", "total_power", c.total_power);
        non_negative(c.total_power, "total_power");

        if (doc.contains("users"))
        {
            const json &u = doc.at("users");
            if (u.is_array())
            {
                if (u.empty())
                    invalid("users", "list must not be empty");
                bool any_power = false, all_power = true;
                for (std::size_t i = 0; i < u.size(); ++i)
                {
                    const std::string p = "users[" + std::to_string(i) + "]";
                    const json &e = u[i];
                    allow_keys(e, p, {"center", "length_h", "length_v", "yaw", "pitch", "roll", "p_max"});
                    UserSpec us;
                    if (!e.contains("center") || !e.at("center").is_array() || e.at("center").size() != 3)
                        parse_fail("'" + p + ".center' must be a list of 3 numbers");
                    for (int d = 0; d < 3; ++d)
                    {
                        if (!e.at("center")[d].is_number())
                            parse_fail("'" + p + ".center' must be a list of 3 numbers");
                        us.aperture.center(d) = e.at("center")[d].get<double>();
                    }
                    us.aperture.length_h = number(e, p, "length_h", c.users.length_h);
                    us.aperture.length_v = number(e, p, "length_v", c.users.length_v);
                    positive(us.aperture.length_h, p + ".length_h");
                    positive(us.aperture.length_v, p + ".length_v");
                    us.aperture.yaw = number(e, p, "yaw", 0.0);
                    us.aperture.pitch = number(e, p, "pitch", 0.0);
                    us.aperture.roll = number(e, p, "roll", 0.0);
                    if (e.contains("p_max"))
                    {
                        us.p_max = number(e, p, "p_max", 0.0);
                        non_negative(us.p_max, p + ".p_max");
                        any_power = true;
                    }
                    else
                        all_power = false;
                    c.users.explicit_users.push_back(us);
                }
                if (any_power && !all_power)
                    invalid("users", "p_max must be given for every user or for none");
                c.users.has_explicit_power = any_power;
                c.users.count = static_cast<int>(u.size());
            }
            else
            {
                allow_keys(u, "users", {"count", "radius", "length_h", "length_v", "angle_jitter_rad"});
                const long long n = integer(u, "users", "count", c.users.count);
                if (n < 1 || n > 1000)
                    invalid("users.count", "must be between 1 and 1000");
                c.users.count = static_cast<int>(n);
                c.users.radius = number(u, "users", "radius", c.users.radius);
                positive(c.users.radius, "users.radius");
                c.users.length_h = number(u, "users", "length_h", c.users.length_h);
                c.users.length_v = number(u, "users", "length_v", c.users.length_v);
                positive(c.users.length_h, "users.length_h");
                positive(c.users.length_v, "users.length_v");
                c.users.angle_jitter = number(u, "users", "angle_jitter_rad", 0.0);
                non_negative(c.users.angle_jitter, "users.angle_jitter_rad");
            }
        }

        if (doc.contains("sweep"))
        {
            const json &s = doc.at("sweep");
            allow_keys(s, "sweep", {"axis", "values"});
            c.axis = axis_from(text(s, "sweep", "axis", "total_power"));
            if (s.contains("values"))
            {
                if (!s.at("values").is_array())
                    parse_fail("'sweep.values' must be a list of numbers");
                c.values.clear();
                for (std::size_t i = 0; i < s.at("values").size(); ++i)
                {
                    const json &v = s.at("values")[i];
                    if (!v.is_number())
                        parse_fail("'sweep.values' must be a list of numbers");
                    c.values.push_back(v.get<double>());
                }
            }
        }
        if (c.values.empty())
            invalid("sweep.values", "must not be empty");
        for (std::size_t i = 0; i < c.values.size(); ++i)
        {
            const std::string f = "sweep.values[" + std::to_string(i) + "]";
            if (c.axis == SweepAxis::TotalPower)
                non_negative(c.values[i], f);
            else
                positive(c.values[i], f);
        }

        if (doc.contains("schemes"))
        {
            const json &s = doc.at("schemes");
            if (!s.is_array())
                parse_fail("'schemes' must be a list of names");
            c.schemes.clear();
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                if (!s[i].is_string())
                    parse_fail("'schemes' must be a list of names");
                c.schemes.push_back(scheme_from(s[i].get<std::string>(), "schemes[" + std::to_string(i) + "]"));
            }
        }
        if (c.schemes.empty())
            invalid("schemes", "must not be empty");

        if (doc.contains("quadrature"))
        {
            const json &q = doc.at("quadrature");
            allow_keys(q, "quadrature", {"nodes_per_wavelength", "doubling_check", "angular_theta", "angular_phi",
                                         "optimal_grid_per_wavelength"});
            c.quadrature.nodes_per_wavelength =
                static_cast<int>(integer(q, "quadrature", "nodes_per_wavelength", c.quadrature.nodes_per_wavelength));
            if (c.quadrature.nodes_per_wavelength < 4)
                invalid("quadrature.nodes_per_wavelength", "must be at least 4");
            c.quadrature.doubling_check = boolean(q, "quadrature", "doubling_check", false);
            c.angular.n_theta = static_cast<int>(integer(q, "quadrature", "angular_theta", c.angular.n_theta));
            c.angular.n_phi = static_cast<int>(integer(q, "quadrature", "angular_phi", c.angular.n_phi));
            if (c.angular.n_theta < 1)
                invalid("quadrature.angular_theta", "must be positive");
            if (c.angular.n_phi < 1)
                invalid("quadrature.angular_phi", "must be positive");
            c.optimal_grid_per_wavelength =
                number(q, "quadrature", "optimal_grid_per_wavelength", c.optimal_grid_per_wavelength);
            if (!(c.optimal_grid_per_wavelength >= 4.0))
                invalid("quadrature.optimal_grid_per_wavelength", "must be at least 4");
        }

        if (doc.contains("optimizer"))
        {
            const json &o = doc.at("optimizer");
            allow_keys(o, "optimizer", {"eps", "max_iter"});
            c.optimizer.eps = number(o, "optimizer", "eps", c.optimizer.eps);
            positive(c.optimizer.eps, "optimizer.eps");
            const long long mi = integer(o, "optimizer", "max_iter", c.optimizer.max_iter);
            if (mi < 1 || mi > 100000)
                invalid("optimizer.max_iter", "must be between 1 and 100000");
            c.optimizer.max_iter = static_cast<int>(mi);
        }

        c.prune_evanescent = boolean(doc, "", "prune_evanescent", false);
        const long long seed = integer(doc, "", "seed", 1);
        if (seed < 0)
            invalid("seed", "must be non-negative");
        c.seed = static_cast<std::uint64_t>(seed);
        c.output = text(doc, "", "output", "");
        c.cache_dir = text(doc, "", "cache_dir", "");
        c.record_timing = boolean(doc, "", "record_timing", false);
        return c;
    }

    SweepConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw Error(Errc::IoError, "cannot read " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::vector<ApertureSpec> place_users_semicircle(int K, double radius, const ApertureSpec &rx, double length_h,
                                                     double length_v, const std::vector<double> &offsets)
    {
        if (K < 1)
            throw Error(Errc::NoUsers, "semicircle layout needs at least one user");
        if (!(radius > 0.0))
            throw Error(Errc::ValidationError, "semicircle radius must be positive");
        std::vector<ApertureSpec> out;
        for (int k = 1; k <= K; ++k)
        {
            double alpha = (2.0 * k - 1.0) * std::numbers::pi / (2.0 * K);
            if (static_cast<std::size_t>(k - 1) < offsets.size())
                alpha += offsets[static_cast<std::size_t>(k - 1)];
            ApertureSpec a;
            a.center = rx.center + radius * Vec3(std::cos(alpha), 0.0, std::sin(alpha));
            a.length_h = length_h;
            a.length_v = length_v;
            // Normal R z = (sin p, 0, cos p) points back at the receiver.
            a.pitch = std::atan2(-std::cos(alpha), -std::sin(alpha));
            out.push_back(a);
        }
        return out;
    }

    Scenario scenario_at(const SweepConfig &cfg, double v)
    {
        Scenario s;
        s.frequency = cfg.axis == SweepAxis::Frequency ? v : cfg.frequency;
        s.rx = cfg.rx;
        if (cfg.axis == SweepAxis::RxSize)
            s.rx.length_h = s.rx.length_v = v;
        s.sigma_emi2 = cfg.noise == NoiseMode::HwOnly ? 0.0 : cfg.sigma_emi2;
        s.n0_half = cfg.n0_half;

        const double total = cfg.axis == SweepAxis::TotalPower ? v : cfg.total_power;
        const auto &L = cfg.users;
        if (L.is_explicit())
        {
            for (UserSpec u : L.explicit_users)
            {
                if (cfg.axis == SweepAxis::Distance)
                    u.aperture.center *= v / u.aperture.center.norm();
                if (cfg.axis == SweepAxis::TxSize)
                    u.aperture.length_h = u.aperture.length_v = v;
                if (!L.has_explicit_power || cfg.axis == SweepAxis::TotalPower)
                    u.p_max = total / static_cast<double>(L.explicit_users.size());
                s.users.push_back(u);
            }
        }
        else
        {
            std::vector<double> offsets;
            if (L.angle_jitter > 0.0)
            {
                std::mt19937_64 rng(cfg.seed);
                std::uniform_real_distribution<double> d(-L.angle_jitter, L.angle_jitter);
                for (int k = 0; k < L.count; ++k)
                    offsets.push_back(d(rng));
            }
            const double radius = cfg.axis == SweepAxis::Distance ? v : L.radius;
            const double side_h = cfg.axis == SweepAxis::TxSize ? v : L.length_h;
            const double side_v = cfg.axis == SweepAxis::TxSize ? v : L.length_v;
            for (const ApertureSpec &a : place_users_semicircle(L.count, radius, s.rx, side_h, side_v, offsets))
                s.users.push_back({a, total / L.count});
        }
        return s;
    }

    std::vector<ResultRow> run_sweep(const SweepConfig &cfg)
    {
        if (cfg.schemes.empty())
            throw Error(Errc::ValidationError, "schemes: must not be empty");
        if (cfg.values.empty())
            throw Error(Errc::ValidationError, "sweep.values: must not be empty");
        MatrixStore store(cfg.cache_dir);
        std::vector<ResultRow> rows;
        for (double v : cfg.values)
        {
            const Scenario sc = scenario_at(cfg, v);
            std::vector<double> p_max;
            for (const auto &u : sc.users)
                p_max.push_back(u.p_max);
            PointContext ctx{cfg, sc, store, PhysicalConstants::at(sc.frequency), p_max, {}, {}, {}};
            const std::string id = scenario_id(sc);
            for (Scheme s : cfg.schemes)
            {
                ResultRow row;
                row.scenario_id = id;
                row.scheme = to_string(s);
                row.axis = to_string(cfg.axis);
                row.axis_value = v;
                const auto t0 = std::chrono::steady_clock::now();
                try
                {
                    const AllocationResult r = ctx.run(s);
                    row.sum_se = r.sum_se;
                    row.iterations = r.iterations;
                    row.converged = r.converged ? "true" : "false";
                }
                catch (const Error &e)
                {
                    row.sum_se = std::numeric_limits<double>::quiet_NaN();
                    row.iterations = 0;
                    row.converged = std::string("error:") + e.name();
                }
                if (cfg.record_timing)
                    row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                rows.push_back(row);
            }
        }
        if (!cfg.output.empty())
            write_csv(rows, cfg.output);
        return rows;
    }

    std::string csv_header()
    {
        return "scenario_id,scheme,axis,axis_value,sum_se_bps_hz,iterations,converged,wall_time_s";
    }

    std::string format_csv(const std::vector<ResultRow> &rows)
    {
        std::string out = csv_header() + "\n";
        for (const auto &r : rows)
        {
            out += r.scenario_id + "," + r.scheme + "," + r.axis + "," + fmt_short(r.axis_value) + "," +
                   (std::isnan(r.sum_se) ? std::string("nan") : fmt_short(r.sum_se)) + "," +
                   std::to_string(r.iterations) + "," + r.converged + ",";
            if (r.wall_time_s)
            {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.6f", *r.wall_time_s);
                out += buf;
            }
            else
                out += "NA";
            out += "\n";
        }
        return out;
    }

    void write_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(Errc::IoError, "cannot write " + path.string());
        out << format_csv(rows);
    }

    std::vector<ResultRow> parse_csv(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        std::string line;
        if (!std::getline(in, line) || line != csv_header())
            throw Error(Errc::ParseError, "CSV header does not match the sweep format");
        std::vector<ResultRow> rows;
        std::size_t lineno = 1;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty())
                continue;
            std::vector<std::string> f;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                f.push_back(cell);
            if (f.size() != 8)
                throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 8 fields");
            try
            {
                ResultRow r;
                r.scenario_id = f[0];
                r.scheme = f[1];
                r.axis = f[2];
                r.axis_value = std::stod(f[3]);
                r.sum_se = f[4] == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[4]);
                r.iterations = std::stoi(f[5]);
                r.converged = f[6];
                if (f[7] != "NA")
                    r.wall_time_s = std::stod(f[7]);
                rows.push_back(r);
            }
            catch (const std::logic_error &)
            {
                throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": malformed number");
            }
        }
        return rows;
    }
}
