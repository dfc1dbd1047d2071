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

#include <catch_amalgamated.hpp>

#include "hmimo/wavenumber_basis.hpp"
#include "test_support.hpp"

using namespace hmimo;
using Catch::Approx;

namespace
{
    const double lambda = 0.03;
    const double two_pi = 2 * std::numbers::pi;

    // Tensor Gauss-Legendre rule over [x0, x0+Sx] x [y0, y0+Sy]; `order`
    // nodes on each of `panels` panels per axis.
    struct Rect
    {
        Rule1D x, y;
        Rect(double x0, double Sx, double y0, double Sy, int panels, int order)
            : x(composite_gauss_legendre(panels, order, x0, x0 + Sx)), y(composite_gauss_legendre(panels, order, y0, y0 + Sy)) {}
        template <typename F>
        auto integrate(F &&f) const
        {
            decltype(f(0.0, 0.0)) acc{};
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = 0; j < y.size(); ++j)
                    acc += f(x.x[i], y.x[j]) * (x.w[i] * y.w[j]);
            return acc;
        }
    };

    CurrentGrid bandlimited_current(testing::Gen &g, const ModeIndexSet &modes, const AlignedAperture &al, int nx, int ny,
                                    std::vector<CVec3> &coeffs)
    {
        coeffs.assign(modes.size(), CVec3::Zero());
        for (auto &c : coeffs)
            c = CVec3(g.cnormal(), g.cnormal(), g.cnormal());
        CurrentGrid grid = CurrentGrid::on(al, nx, ny);
        for (int a = 0; a < nx; ++a)
            for (int b = 0; b < ny; ++b)
                grid.at(a, b) = reconstruct_current(coeffs, modes, grid.position(a, b));
        return grid;
    }

    AlignedAperture flat(double Sx, double Sy, double x0, double y0)
    {
        AlignedAperture al;
        al.S_x = Sx;
        al.S_y = Sy;
        al.s_x0 = x0;
        al.s_y0 = y0;
        al.s_z0 = 50;
        return al;
    }
}

TEST_CASE("mode_set: counts and ordering")
{
    const ModeIndexSet a = mode_set(2 * lambda, 2 * lambda, lambda, false);
    CHECK(a.N_x == 2);
    CHECK(a.N_y == 2);
    CHECK(a.size() == 25);
    CHECK(a[0] == ModeIndex{-2, -2});
    CHECK(a[1] == ModeIndex{-2, -1});
    CHECK(a[5] == ModeIndex{-1, -2});
    CHECK(a[24] == ModeIndex{2, 2});
    CHECK(a.find({0, 0}) == 12);

    const ModeIndexSet b = mode_set(lambda, lambda, lambda, false);
    CHECK(b.N_x == 1);
    CHECK(b.size() == 9);

    const ModeIndexSet p = mode_set(2 * lambda, 2 * lambda, lambda, true);
    CHECK(p.size() == 13);
    for (ModeIndex c : {ModeIndex{2, 2}, ModeIndex{-2, 2}, ModeIndex{2, -2}, ModeIndex{-2, -2}})
        CHECK(p.find(c) == -1);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK(p.wavenumber(i).norm() <= two_pi / lambda * (1 + 1e-12));
}

TEST_CASE("mode_set: count formula over random extents")
{
    testing::Gen g(1);
    for (int i = 0; i < 200; ++i)
    {
        const double Sx = g.uniform(0.2, 6) * lambda, Sy = g.uniform(0.2, 6) * lambda;
        const ModeIndexSet s = mode_set(Sx, Sy, lambda, false);
        CHECK(s.N_x == static_cast<int>(std::ceil(Sx / lambda)));
        CHECK(s.size() == static_cast<std::size_t>((2 * s.N_x + 1) * (2 * s.N_y + 1)));
        const ModeIndexSet p = mode_set(Sx, Sy, lambda, true);
        CHECK(p.size() <= s.size());
        for (std::size_t k = 0; k < p.size(); ++k)
            CHECK(p.wavenumber(k).norm() <= two_pi / lambda * (1 + 1e-12));
    }
}

TEST_CASE("sinc: removable point and nulls")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-10) == Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(sinc(std::numbers::pi)) < 1e-16);
    CHECK(sinc(0.5) == Approx(std::sin(0.5) / 0.5).epsilon(1e-15));
}

TEST_CASE("tx_basis_eval: zero mode, modulus and periodicity")
{
    const double Sx = 2 * lambda, Sy = 1.5 * lambda;
    CHECK(std::abs(tx_basis_eval({0, 0}, Vec2(0.01, -0.02), Sx, Sy) - 1.0 / std::sqrt(Sx * Sy)) < 1e-14);
    testing::Gen g(2);
    for (int i = 0; i < 100; ++i)
    {
        const ModeIndex n{g.integer(-3, 3), g.integer(-3, 3)};
        const Vec2 s(g.uniform(-1, 1), g.uniform(-1, 1));
        CHECK(std::abs(tx_basis_eval(n, s, Sx, Sy)) == Approx(1.0 / std::sqrt(Sx * Sy)).epsilon(1e-14));
    }
    const cdouble a = tx_basis_eval({1, 0}, Vec2(0.5 * Sx, 0.003), Sx, Sy);
    const cdouble b = tx_basis_eval({1, 0}, Vec2(-0.5 * Sx, 0.003), Sx, Sy);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("rx_basis_eval: mirrors the transmit basis")
{
    const double Rx = 4 * lambda, Ry = 3 * lambda;
    CHECK(std::abs(rx_basis_eval({0, 0}, Vec2(0.01, 0.0), Rx, Ry) - 1.0 / std::sqrt(Rx * Ry)) < 1e-14);
    const cdouble a = rx_basis_eval({0, 2}, Vec2(0.001, 0.5 * Ry), Rx, Ry);
    const cdouble b = rx_basis_eval({0, 2}, Vec2(0.001, -0.5 * Ry), Rx, Ry);
    CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("basis Gram matrix is the identity")
{
    for (auto [Sx, Sy, x0, y0] : {std::tuple{2 * lambda, 2 * lambda, -lambda, -lambda},
                                  std::tuple{3.3 * lambda, 1.7 * lambda, 0.41, -7.2}})
    {
        const ModeIndexSet s = mode_set(Sx, Sy, lambda, false);
        const Rect rect(x0, Sx, y0, Sy, 8, 12);
        double worst = 0.0;
        for (std::size_t p = 0; p < s.size(); ++p)
            for (std::size_t q = 0; q < s.size(); ++q)
            {
                const cdouble v = rect.integrate([&](double x, double y) {
                    return tx_basis_eval(s[p], Vec2(x, y), Sx, Sy) * std::conj(tx_basis_eval(s[q], Vec2(x, y), Sx, Sy));
                });
                worst = std::max(worst, std::abs(v - (p == q ? 1.0 : 0.0)));
            }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("rx_basis_ft: peak, null and quadrature oracle")
{
    const double Rx = 4 * lambda, Ry = 3 * lambda;
    const ModeIndex m{1, -2};
    const Vec2 km(two_pi * 1 / Rx, two_pi * -2 / Ry);
    CHECK(std::abs(rx_basis_ft(m, km, Rx, Ry) - std::sqrt(Rx * Ry)) < 1e-14);
    CHECK(std::abs(rx_basis_ft(m, km + Vec2(two_pi / Rx, 0), Rx, Ry)) < 1e-16);

    testing::Gen g(4);
    const Rect rect(-0.5 * Rx, Rx, -0.5 * Ry, Ry, 10, 16);
    for (int i = 0; i < 20; ++i)
    {
        const ModeIndex mm{g.integer(-4, 4), g.integer(-3, 3)};
        const Vec2 kap(g.uniform(-1, 1) * two_pi / lambda, g.uniform(-1, 1) * two_pi / lambda);
        const cdouble q = rect.integrate([&](double x, double y) {
            return rx_basis_eval(mm, Vec2(x, y), Rx, Ry) * std::polar(1.0, -(kap(0) * x + kap(1) * y));
        });
        CHECK(std::abs(rx_basis_ft(mm, kap, Rx, Ry) - q) < 1e-10);
    }
}

TEST_CASE("tx_basis_ft: untilted peak and null")
{
    const AlignedAperture al = flat(2 * lambda, 2 * lambda, -lambda, -lambda);
    const Vec2 kn(two_pi / al.S_x, 0);
    CHECK(std::abs(std::abs(tx_basis_ft({1, 0}, kn, al)) - std::sqrt(al.S_x * al.S_y)) < 1e-14);
    CHECK(std::abs(tx_basis_ft({1, 0}, kn + Vec2(0, two_pi / al.S_y), al)) < 1e-16);
}

TEST_CASE("tx_basis_ft: tilted apertures match quadrature over the physical plane")
{
    testing::Gen g(6);
    for (int i = 0; i < 12; ++i)
    {
        ApertureSpec a;
        a.center = Vec3(g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(20, 80));
        a.length_h = g.uniform(1, 3) * lambda;
        a.length_v = g.uniform(1, 3) * lambda;
        a.yaw = g.uniform(-3, 3);
        a.pitch = g.uniform(-1.2, 1.2);
        a.roll = g.uniform(-1.2, 1.2);
        const AlignedAperture al = align_aperture(a, lambda);
        const ModeIndexSet s = mode_set(al.S_x, al.S_y, lambda, false);
        const ModeIndex n = s[static_cast<std::size_t>(g.integer(0, static_cast<int>(s.size()) - 1))];
        const Vec2 kap(g.uniform(-1, 1) * two_pi / lambda, g.uniform(-1, 1) * two_pi / lambda);
        // Integrate over the local (h, v) parameterization of the physical
        // rectangle, independent of the aligned frame.
        const Rect rect(-0.5 * a.length_h, a.length_h, -0.5 * a.length_v, a.length_v, 6, 20);
        const cdouble q = rect.integrate([&](double u, double v) {
            const Vec3 p = a.point(u, v);
            const Vec3 sp = al.U * p;
            return tx_basis_eval(n, Vec2(sp(0), sp(1)), al.S_x, al.S_y) * std::polar(1.0, -(kap(0) * p(0) + kap(1) * p(1)));
        });
        CHECK(std::abs(tx_basis_ft(n, kap, al) - q) < 1e-9 * std::sqrt(al.S_x * al.S_y));
    }
}

TEST_CASE("expand_current: constant current projects onto the zero mode")
{
    const AlignedAperture al = flat(2 * lambda, 2 * lambda, -0.3, 0.7);
    const ModeIndexSet s = mode_set(al.S_x, al.S_y, lambda, false);
    CurrentGrid grid = CurrentGrid::on(al, 16, 16);
    const CVec3 c(cdouble(1, 2), cdouble(-0.5, 0), cdouble(0, 3));
    for (auto &v : grid.samples)
        v = c;
    const auto xi = expand_current(grid, s);
    const long zero = s.find({0, 0});
    for (std::size_t q = 0; q < s.size(); ++q)
    {
        if (static_cast<long>(q) == zero)
            CHECK((xi[q] - c * std::sqrt(al.S_x * al.S_y)).norm() < 1e-12);
        else
            CHECK(xi[q].norm() < 1e-12);
    }
}

TEST_CASE("expand_current: a single basis function gives a unit coefficient")
{
    const AlignedAperture al = flat(3 * lambda, 2 * lambda, 0.1, -0.2);
    const ModeIndexSet s = mode_set(al.S_x, al.S_y, lambda, false);
    CurrentGrid grid = CurrentGrid::on(al, 12, 8);
    const ModeIndex pick{-2, 1};
    for (int a = 0; a < grid.n_x; ++a)
        for (int b = 0; b < grid.n_y; ++b)
            grid.at(a, b) = CVec3(1, 0, 0) * tx_basis_eval(pick, grid.position(a, b), al.S_x, al.S_y);
    const auto xi = expand_current(grid, s);
    for (std::size_t q = 0; q < s.size(); ++q)
    {
        const double expect = s[q] == pick ? 1.0 : 0.0;
        CHECK(std::abs(xi[q](0) - expect) < 1e-10);
        CHECK(std::abs(xi[q](1)) < 1e-10);
    }
}

TEST_CASE("expand_current: Parseval and reconstruction on random band-limited currents")
{
    testing::Gen g(8);
    for (int trial = 0; trial < 20; ++trial)
    {
        const AlignedAperture al = flat(g.uniform(0.5, 3) * lambda, g.uniform(0.5, 3) * lambda, g.uniform(-1, 1), g.uniform(-1, 1));
        const ModeIndexSet s = mode_set(al.S_x, al.S_y, lambda, trial % 2 == 1);
        std::vector<CVec3> truth;
        const int nx = 4 * s.N_x + g.integer(0, 5), ny = 4 * s.N_y + g.integer(0, 5);
        const CurrentGrid grid = bandlimited_current(g, s, al, nx, ny, truth);
        const auto xi = expand_current(grid, s);

        // Both sides by independent Gauss-Legendre quadrature of |j|^2.
        const Rect rect(al.s_x0, al.S_x, al.s_y0, al.S_y, 4, 24);
        const double energy = rect.integrate([&](double x, double y) {
            return reconstruct_current(truth, s, Vec2(x, y)).squaredNorm();
        });
        double coeff = 0.0;
        for (const auto &c : xi)
            coeff += c.squaredNorm();
        CHECK(std::abs(energy - coeff) < 1e-8 * energy);

        double err = 0.0, ref = 0.0;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
            {
                const Vec2 p(al.s_x0 + (a + 0.3) / 7 * al.S_x, al.s_y0 + (b + 0.6) / 7 * al.S_y);
                const CVec3 t = reconstruct_current(truth, s, p);
                err += (reconstruct_current(xi, s, p) - t).squaredNorm();
                ref += t.squaredNorm();
            }
        CHECK(std::sqrt(err / ref) < 1e-8);
    }
}

TEST_CASE("expand_current: coarse grids are rejected")
{
    const AlignedAperture al = flat(2 * lambda, 2 * lambda, 0, 0);
    const ModeIndexSet s = mode_set(al.S_x, al.S_y, lambda, false);
    CHECK_THROWS_MATCHES(expand_current(CurrentGrid::on(al, 7, 8), s), Error,
                         Catch::Matchers::Predicate<Error>([](const Error &e) { return e.code() == Errc::GridTooCoarse; }));
    CHECK_NOTHROW(expand_current(CurrentGrid::on(al, 8, 8), s));
}

TEST_CASE("flatten and unflatten round trip")
{
    testing::Gen g(12);
    std::vector<CVec3> xi(5);
    for (auto &v : xi)
        v = CVec3(g.cnormal(), g.cnormal(), g.cnormal());
    const CVector f = flatten(xi);
    CHECK(f.size() == 15);
    const auto back = unflatten(f);
    for (std::size_t i = 0; i < xi.size(); ++i)
        CHECK((back[i] - xi[i]).norm() == 0.0);
    CHECK_THROWS_AS(unflatten(CVector::Zero(4)), Error);
}
