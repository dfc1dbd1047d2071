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

#include "hmimo/benchmarks.hpp"

#include <cmath>
#include <map>
#include <tuple>

namespace hmimo
{
    namespace
    {
        using OffsetKey = std::tuple<long long, long long, long long>;

        OffsetKey quantize(const Vec3 &d, double unit)
        {
            return {std::llround(d(0) / unit), std::llround(d(1) / unit), std::llround(d(2) / unit)};
        }

        bool negative(const OffsetKey &k)
        {
            return k < OffsetKey{0, 0, 0};
        }

        OffsetKey flip(const OffsetKey &k)
        {
            return {-std::get<0>(k), -std::get<1>(k), -std::get<2>(k)};
        }

        void check_counts(const Scenario &s, const DiscreteArraySpec &spec, const std::vector<double> &p_max)
        {
            if (spec.users.size() != s.users.size() || p_max.size() != s.users.size())
                throw Error(Errc::DimensionMismatch, "array spec and power list must match the user count");
        }

        struct Grid
        {
            std::vector<Vec3> points;
            double cell_area = 0.0;
        };

        Grid aperture_grid(const ApertureSpec &a, double per_wavelength, double lambda)
        {
            const ElementCounts n{static_cast<int>(std::ceil(a.length_h / lambda * per_wavelength - 1e-9)),
                                  static_cast<int>(std::ceil(a.length_v / lambda * per_wavelength - 1e-9))};
            return {element_positions(a, n), (a.length_h / n.h) * (a.length_v / n.v)};
        }
    }

    ElementCounts element_counts(const ApertureSpec &a, double lambda)
    {
        return {std::max(1, static_cast<int>(std::ceil(2.0 * a.length_h / lambda - 1e-9))),
                std::max(1, static_cast<int>(std::ceil(2.0 * a.length_v / lambda - 1e-9)))};
    }

    DiscreteArraySpec DiscreteArraySpec::for_scenario(const Scenario &s)
    {
        const PhysicalConstants k = PhysicalConstants::at(s.frequency);
        DiscreteArraySpec d;
        d.spacing = 0.5 * k.lambda;
        for (const auto &u : s.users)
            d.users.push_back(element_counts(u.aperture, k.lambda));
        d.rx = element_counts(s.rx, k.lambda);
        return d;
    }

    std::vector<Vec3> element_positions(const ApertureSpec &a, ElementCounts n)
    {
        if (n.h < 1 || n.v < 1)
            throw Error(Errc::GridTooCoarse, "element counts must be positive");
        std::vector<Vec3> out;
        out.reserve(static_cast<std::size_t>(n.total()));
        const double dh = a.length_h / n.h, dv = a.length_v / n.v;
        for (int i = 0; i < n.h; ++i)
            for (int j = 0; j < n.v; ++j)
                out.push_back(a.point(-0.5 * a.length_h + (i + 0.5) * dh, -0.5 * a.length_v + (j + 0.5) * dv));
        return out;
    }

    CMatrix discrete_channel(const ApertureSpec &user, ElementCounts tx, const std::vector<Vec3> &rx_positions,
                             const PhysicalConstants &k, int sub)
    {
        if (sub < 1)
            throw Error(Errc::GridTooCoarse, "patch refinement must be at least 1");
        const std::vector<Vec3> s = element_positions(user, tx);
        const double dh = user.length_h / tx.h, dv = user.length_v / tx.v;
        const double area = dh * dv;
        const Vec3 eh = user.axis_h(), ev = user.axis_v();
        auto sub_point = [&](std::size_t i, int a, int c) {
            return Vec3(s[i] + ((a + 0.5) / sub - 0.5) * dh * eh + ((c + 0.5) / sub - 0.5) * dv * ev);
        };
        for (const Vec3 &r : rx_positions)
            for (std::size_t i = 0; i < s.size(); ++i)
                for (int a = 0; a < sub; ++a)
                    for (int c = 0; c < sub; ++c)
                        if ((r - sub_point(i, a, c)).norm() < 10.0 * k.lambda)
                            throw Error(Errc::TooClose, "array element closer than 10 wavelengths to the receiver");
        CMatrix H(3 * static_cast<Eigen::Index>(rx_positions.size()), 3 * static_cast<Eigen::Index>(s.size()));
#pragma omp parallel for schedule(static)
        for (long jl = 0; jl < static_cast<long>(rx_positions.size()); ++jl)
        {
            const std::size_t j = static_cast<std::size_t>(jl);
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                CMat3 b = CMat3::Zero();
                for (int a = 0; a < sub; ++a)
                    for (int c = 0; c < sub; ++c)
                        b += green(rx_positions[j], sub_point(i, a, c), k);
                H.block<3, 3>(3 * jl, 3 * static_cast<Eigen::Index>(i)) = b * (area / (sub * sub));
            }
        }
        return H;
    }

    CMatrix discrete_noise_covariance(const std::vector<Vec3> &pos, double sigma_emi2, double n0_half,
                                      const PhysicalConstants &k, const AngularQuadSpec &quad)
    {
        if (!(sigma_emi2 >= 0.0) || !(n0_half > 0.0))
            throw Error(Errc::BadNoiseDensity, "noise densities must satisfy sigma_emi2 >= 0 and n0_half > 0");
        const std::size_t n = pos.size();
        const double unit = 1e-9 * k.lambda;

        // Canonical offsets: each unordered pair maps to a key with a
        // non-negative lexicographic sign; rho(-d) = rho(d)^H covers the rest.
        std::map<OffsetKey, std::size_t> slot;
        std::vector<Vec3> offsets;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
            {
                const Vec3 d = pos[a] - pos[b];
                OffsetKey key = quantize(d, unit);
                const bool neg = negative(key);
                if (neg)
                    key = flip(key);
                if (slot.emplace(key, offsets.size()).second)
                    offsets.push_back(neg ? Vec3(-d) : d);
            }

        double longest = 0.0;
        for (const Vec3 &d : offsets)
            longest = std::max(longest, d.norm());
        quad.check(longest / k.lambda);

        std::vector<CMat3> rho(offsets.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < static_cast<long>(offsets.size()); ++i)
            rho[static_cast<std::size_t>(i)] = emi_autocorrelation(offsets[static_cast<std::size_t>(i)], sigma_emi2, k, quad);

        CMatrix R(3 * static_cast<Eigen::Index>(n), 3 * static_cast<Eigen::Index>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b)
            {
                OffsetKey key = quantize(pos[a] - pos[b], unit);
                const bool neg = negative(key);
                const CMat3 &r = rho[slot.at(neg ? flip(key) : key)];
                const CMat3 blk = neg ? CMat3(r.adjoint()) : r;
                R.block<3, 3>(3 * a, 3 * b) = blk;
                R.block<3, 3>(3 * b, 3 * a) = blk.adjoint();
            }
        R.diagonal().array() += n0_half;
        return R;
    }

    AllocationResult discrete_benchmark_se(const Scenario &s, const DiscreteArraySpec &spec,
                                           const std::vector<double> &p_max, const AngularQuadSpec &quad,
                                           const IwfOptions &opt)
    {
        check_counts(s, spec, p_max);
        validate_scenario(s);
        const PhysicalConstants k = PhysicalConstants::at(s.frequency);
        const std::vector<Vec3> rx = element_positions(s.rx, spec.rx);
        std::vector<CMatrix> H;
        for (std::size_t u = 0; u < s.users.size(); ++u)
            H.push_back(discrete_channel(s.users[u].aperture, spec.users[u], rx, k));
        const CMatrix R = discrete_noise_covariance(rx, s.sigma_emi2, s.n0_half, k, quad);
        return iterative_water_filling(H, R, p_max, opt);
    }

    AllocationResult optimal_decomposition_se(const Scenario &s, double grid_per_wavelength,
                                              const std::vector<double> &p_max, const AngularQuadSpec &quad,
                                              const IwfOptions &opt)
    {
        if (!(grid_per_wavelength >= 4.0))
            throw Error(Errc::GridTooCoarse, "optimal decomposition grid must have at least 4 cells per wavelength");
        if (p_max.size() != s.users.size())
            throw Error(Errc::DimensionMismatch, "power list must match the user count");
        validate_scenario(s);
        const PhysicalConstants k = PhysicalConstants::at(s.frequency);
        const Grid rx = aperture_grid(s.rx, grid_per_wavelength, k.lambda);

        std::vector<CMatrix> H;
        for (const auto &u : s.users)
        {
            const Grid tx = aperture_grid(u.aperture, grid_per_wavelength, k.lambda);
            const double scale = std::sqrt(rx.cell_area * tx.cell_area);
            CMatrix h(3 * static_cast<Eigen::Index>(rx.points.size()), 3 * static_cast<Eigen::Index>(tx.points.size()));
#pragma omp parallel for schedule(static)
            for (long a = 0; a < static_cast<long>(rx.points.size()); ++a)
                for (std::size_t b = 0; b < tx.points.size(); ++b)
                    h.block<3, 3>(3 * a, 3 * static_cast<Eigen::Index>(b)) =
                        green(rx.points[static_cast<std::size_t>(a)], tx.points[b], k) * scale;
            H.push_back(std::move(h));
        }
        // Projection of the interference onto normalized pixel functions
        // scales its autocorrelation by the pixel area.
        const CMatrix R = discrete_noise_covariance(rx.points, s.sigma_emi2 * rx.cell_area, s.n0_half, k, quad);
        return iterative_water_filling(H, R, p_max, opt);
    }

    namespace reference
    {
        CMatrix discrete_noise_covariance(const std::vector<Vec3> &pos, double sigma_emi2, double n0_half,
                                          const PhysicalConstants &k, const AngularQuadSpec &quad)
        {
            if (!(sigma_emi2 >= 0.0) || !(n0_half > 0.0))
                throw Error(Errc::BadNoiseDensity, "noise densities must satisfy sigma_emi2 >= 0 and n0_half > 0");
            const std::size_t n = pos.size();
            CMatrix R(3 * static_cast<Eigen::Index>(n), 3 * static_cast<Eigen::Index>(n));
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    R.block<3, 3>(3 * a, 3 * b) = emi_autocorrelation(pos[a] - pos[b], sigma_emi2, k, quad);
            R.diagonal().array() += n0_half;
            return R;
        }
    }
}
