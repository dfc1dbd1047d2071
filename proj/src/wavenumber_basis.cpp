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

#include "hmimo/wavenumber_basis.hpp"

#include <cmath>
#include <numbers>

namespace hmimo
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;

        int mode_bound(double S, double lambda)
        {
            // Guard against S/lambda landing a rounding error above an integer.
            return static_cast<int>(std::ceil(S / lambda - 1e-9));
        }
    }

    Vec2 ModeIndexSet::wavenumber(std::size_t i) const
    {
        return Vec2(two_pi * modes[i].nx / S_x, two_pi * modes[i].ny / S_y);
    }

    long ModeIndexSet::find(ModeIndex m) const
    {
        for (std::size_t i = 0; i < modes.size(); ++i)
            if (modes[i] == m)
                return static_cast<long>(i);
        return -1;
    }

    ModeIndexSet mode_set(double S_x, double S_y, double lambda, bool prune)
    {
        if (!(S_x > 0.0) || !(S_y > 0.0))
            throw Error(Errc::NonPositiveAperture, "mode set needs positive extents");
        ModeIndexSet set;
        set.S_x = S_x;
        set.S_y = S_y;
        set.N_x = mode_bound(S_x, lambda);
        set.N_y = mode_bound(S_y, lambda);
        set.prune_evanescent = prune;
        const double k0 = two_pi / lambda;
        for (int nx = -set.N_x; nx <= set.N_x; ++nx)
            for (int ny = -set.N_y; ny <= set.N_y; ++ny)
            {
                const double kx = two_pi * nx / S_x, ky = two_pi * ny / S_y;
                if (prune && kx * kx + ky * ky > k0 * k0 * (1.0 + 1e-12))
                    continue;
                set.modes.push_back({nx, ny});
            }
        return set;
    }

    double sinc(double u)
    {
        if (std::abs(u) < 1e-8)
            return 1.0 - u * u / 6.0;
        return std::sin(u) / u;
    }

    cdouble tx_basis_eval(ModeIndex n, const Vec2 &s, double S_x, double S_y)
    {
        const double ph = two_pi * n.nx / S_x * s(0) + two_pi * n.ny / S_y * s(1);
        return std::polar(1.0 / std::sqrt(S_x * S_y), ph);
    }

    cdouble rx_basis_eval(ModeIndex m, const Vec2 &r, double R_x, double R_y)
    {
        return tx_basis_eval(m, r, R_x, R_y);
    }

    double rx_basis_ft_real(ModeIndex m, const Vec2 &kappa, double R_x, double R_y)
    {
        const double dx = kappa(0) - two_pi * m.nx / R_x;
        const double dy = kappa(1) - two_pi * m.ny / R_y;
        return std::sqrt(R_x * R_y) * sinc(0.5 * dx * R_x) * sinc(0.5 * dy * R_y);
    }

    cdouble rx_basis_ft(ModeIndex m, const Vec2 &kappa, double R_x, double R_y)
    {
        return {rx_basis_ft_real(m, kappa, R_x, R_y), 0.0};
    }

    cdouble tx_basis_ft(ModeIndex n, const Vec2 &kappa, const AlignedAperture &ap)
    {
        // In aligned coordinates the world x-y phase kappa . s becomes
        // a . s' with a = U (kappa_x, kappa_y, 0).
        const Vec3 a = ap.U * Vec3(kappa(0), kappa(1), 0.0);
        const double bx = two_pi * n.nx / ap.S_x - a(0);
        const double by = two_pi * n.ny / ap.S_y - a(1);
        const double ph = -a(2) * ap.s_z0 + bx * (ap.s_x0 + 0.5 * ap.S_x) + by * (ap.s_y0 + 0.5 * ap.S_y);
        return std::polar(std::sqrt(ap.S_x * ap.S_y) * sinc(0.5 * bx * ap.S_x) * sinc(0.5 * by * ap.S_y), ph);
    }

    Vec2 CurrentGrid::position(int i, int j) const
    {
        return Vec2(s_x0 + (i + 0.5) * S_x / n_x, s_y0 + (j + 0.5) * S_y / n_y);
    }

    CurrentGrid CurrentGrid::on(const AlignedAperture &ap, int n_x, int n_y)
    {
        CurrentGrid g;
        g.n_x = n_x;
        g.n_y = n_y;
        g.S_x = ap.S_x;
        g.S_y = ap.S_y;
        g.s_x0 = ap.s_x0;
        g.s_y0 = ap.s_y0;
        g.samples.assign(static_cast<std::size_t>(n_x) * n_y, CVec3::Zero());
        return g;
    }

    std::vector<CVec3> expand_current(const CurrentGrid &j, const ModeIndexSet &modes)
    {
        if (j.samples.size() != static_cast<std::size_t>(j.n_x) * j.n_y || j.n_x < 1 || j.n_y < 1)
            throw Error(Errc::DimensionMismatch, "current grid sample count does not match its shape");
        int max_x = 0, max_y = 0;
        for (const ModeIndex &m : modes.modes)
        {
            max_x = std::max(max_x, std::abs(m.nx));
            max_y = std::max(max_y, std::abs(m.ny));
        }
        if (j.n_x < 4 * max_x || j.n_y < 4 * max_y)
            throw Error(Errc::GridTooCoarse, "current grid has fewer than 4 samples per shortest period");

        // The midpoint rule integrates trigonometric polynomials of degree
        // below the sample count exactly, so projection is exact for
        // band-limited currents.
        const double cell = (j.S_x / j.n_x) * (j.S_y / j.n_y);
        std::vector<CVec3> xi(modes.size(), CVec3::Zero());
        for (std::size_t q = 0; q < modes.size(); ++q)
        {
            CVec3 acc = CVec3::Zero();
            for (int a = 0; a < j.n_x; ++a)
                for (int b = 0; b < j.n_y; ++b)
                    acc += j.at(a, b) * std::conj(tx_basis_eval(modes[q], j.position(a, b), modes.S_x, modes.S_y));
            xi[q] = acc * cell;
        }
        return xi;
    }

    CVec3 reconstruct_current(const std::vector<CVec3> &xi, const ModeIndexSet &modes, const Vec2 &s)
    {
        if (xi.size() != modes.size())
            throw Error(Errc::DimensionMismatch, "coefficient count does not match the mode set");
        CVec3 out = CVec3::Zero();
        for (std::size_t q = 0; q < modes.size(); ++q)
            out += xi[q] * tx_basis_eval(modes[q], s, modes.S_x, modes.S_y);
        return out;
    }

    CVector flatten(const std::vector<CVec3> &xi)
    {
        CVector v(3 * static_cast<Eigen::Index>(xi.size()));
        for (std::size_t q = 0; q < xi.size(); ++q)
            v.segment<3>(3 * static_cast<Eigen::Index>(q)) = xi[q];
        return v;
    }

    std::vector<CVec3> unflatten(const CVector &v)
    {
        if (v.size() % 3 != 0)
            throw Error(Errc::DimensionMismatch, "coefficient vector length is not a multiple of 3");
        std::vector<CVec3> xi(static_cast<std::size_t>(v.size() / 3));
        for (std::size_t q = 0; q < xi.size(); ++q)
            xi[q] = v.segment<3>(3 * static_cast<Eigen::Index>(q));
        return xi;
    }
}
