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

// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "hmimo/benchmarks.hpp"
#include "hmimo/coupling.hpp"
#include "hmimo/experiment.hpp"
#include "hmimo/matrix_cache.hpp"
#include "hmimo/noise_model.hpp"
#include "hmimo/optimizer.hpp"
#include "hmimo/parallel.hpp"
#include "test_support.hpp"

using namespace hmimo;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::string detail;

        void require(bool ok, const std::string &what)
        {
            if (!ok)
            {
                pass = false;
                detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
            }
        }
        void note(const std::string &what) { detail += (detail.empty() ? "" : "; ") + what; }
    };

    std::string fmt(const char *f, double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), f, v);
        return buf;
    }

    double seconds_since(std::chrono::steady_clock::time_point t0)
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    const PhysicalConstants k10 = PhysicalConstants::at(10e9);
    const double lambda = k10.lambda;

    fs::path work_dir()
    {
        const fs::path p = fs::temp_directory_path() / "hmimo_acceptance";
        fs::create_directories(p);
        return p;
    }

    // Desk-scale layout shared by criteria 3, 6 and 7: K = 4 users of
    // 2 x 2 wavelengths on a 75 m semicircle, 4 x 4 wavelength receiver.
    struct Desk
    {
        SweepConfig cfg;
        Scenario sc;
        ModeIndexSet rx_modes;
        std::vector<UserGeometry> users;
        std::vector<ModeIndexSet> tx_modes;
        std::vector<CMatrix> H;
        CMatrix R_z;
        double assembly_s = 0.0;
        double first_user_s = 0.0;

        Desk() : cfg(parse_config("{}")), sc(scenario_at(cfg, cfg.total_power))
        {
            rx_modes = mode_set(sc.rx.length_h, sc.rx.length_v, lambda, false);
            for (const auto &u : sc.users)
            {
                users.push_back(UserGeometry::from(u.aperture, lambda));
                tx_modes.push_back(mode_set(users.back().aligned.S_x, users.back().aligned.S_y, lambda, false));
            }
        }

        void assemble()
        {
            if (!H.empty())
                return;
            const auto t0 = std::chrono::steady_clock::now();
            for (std::size_t u = 0; u < users.size(); ++u)
            {
                H.push_back(assemble_coupling(users[u], sc.rx, rx_modes, tx_modes[u], k10, cfg.quadrature, u).H);
                if (u == 0)
                    first_user_s = seconds_since(t0);
            }
            const CMatrix emi = emi_covariance(rx_modes, sc.rx.length_h, sc.rx.length_v, k10, cfg.angular);
            R_z = noise_covariance(emi, sc.sigma_emi2, sc.n0_half).R_z;
            assembly_s = seconds_since(t0);
        }
    };

    Desk &desk()
    {
        static Desk d;
        return d;
    }

    Outcome criterion1()
    {
        Outcome o;
        testing::Gen g(1);
        double transverse = 0.0, symmetry = 0.0, law = 0.0;
        for (int i = 0; i < 500; ++i)
        {
            const Vec3 r = g.vec3(-1, 1);
            Vec3 dir = g.vec3(-1, 1).normalized();
            const double d = g.uniform(10.5, 200) * lambda;
            const Vec3 s = r + d * dir;
            const CMat3 G = green(r, s, k10);
            transverse = std::max(transverse, (G * (r - s).normalized().cast<cdouble>()).norm() / G.norm());
            symmetry = std::max(symmetry, (G - green(s, r, k10)).norm() / G.norm());
            symmetry = std::max(symmetry, (G - G.transpose()).norm() / G.norm());
            const CMat3 G2 = green(r, r + 2 * d * dir, k10);
            law = std::max(law, std::abs(G2.norm() / G.norm() - 0.5));
        }
        const double s2 = 5.6e-6;
        const CMat3 rho0 = emi_autocorrelation(Vec3::Zero(), s2, k10, {});
        const double rho_err = (rho0 - CMat3::Identity() * (2.0 / 3.0 * s2)).norm() / (2.0 / 3.0 * s2 * std::sqrt(3.0));
        o.require(transverse < 1e-12, "transversality " + fmt("%.2e", transverse));
        o.require(symmetry < 1e-14, "symmetry " + fmt("%.2e", symmetry));
        o.require(law < 1e-12, "1/d law " + fmt("%.2e", law));
        o.require(rho_err < 1e-6, "rho(0) " + fmt("%.2e", rho_err));
        o.note("transversality " + fmt("%.1e", transverse) + ", symmetry " + fmt("%.1e", symmetry) + ", 1/d law " +
               fmt("%.1e", law) + ", rho(0) rel err " + fmt("%.1e", rho_err));
        return o;
    }

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

    Outcome criterion2()
    {
        Outcome o;
        testing::Gen g(2);

        const double Sx = 3.3 * lambda, Sy = 1.7 * lambda;
        const ModeIndexSet s = mode_set(Sx, Sy, lambda, false);
        const Rect rect(0.41, Sx, -7.2, Sy, 8, 12);
        double gram = 0.0;
        for (std::size_t p = 0; p < s.size(); ++p)
            for (std::size_t q = 0; q < s.size(); ++q)
            {
                const cdouble v = rect.integrate([&](double x, double y) {
                    return tx_basis_eval(s[p], Vec2(x, y), Sx, Sy) * std::conj(tx_basis_eval(s[q], Vec2(x, y), Sx, Sy));
                });
                gram = std::max(gram, std::abs(v - (p == q ? 1.0 : 0.0)));
            }

        double parseval = 0.0;
        for (int trial = 0; trial < 20; ++trial)
        {
            AlignedAperture al;
            al.S_x = g.uniform(0.5, 3) * lambda;
            al.S_y = g.uniform(0.5, 3) * lambda;
            al.s_x0 = g.uniform(-1, 1);
            al.s_y0 = g.uniform(-1, 1);
            const ModeIndexSet m = mode_set(al.S_x, al.S_y, lambda, false);
            std::vector<CVec3> truth(m.size());
            for (auto &c : truth)
                c = CVec3(g.cnormal(), g.cnormal(), g.cnormal());
            CurrentGrid grid = CurrentGrid::on(al, 4 * m.N_x + 1, 4 * m.N_y + 2);
            for (int a = 0; a < grid.n_x; ++a)
                for (int b = 0; b < grid.n_y; ++b)
                    grid.at(a, b) = reconstruct_current(truth, m, grid.position(a, b));
            const auto xi = expand_current(grid, m);
            const Rect r(al.s_x0, al.S_x, al.s_y0, al.S_y, 4, 24);
            const double energy = r.integrate([&](double x, double y) { return reconstruct_current(truth, m, Vec2(x, y)).squaredNorm(); });
            double coeff = 0.0;
            for (const auto &c : xi)
                coeff += c.squaredNorm();
            parseval = std::max(parseval, std::abs(energy - coeff) / energy);
        }

        double transform = 0.0;
        const double Rx = 4 * lambda, Ry = 3 * lambda;
        const Rect rr(-0.5 * Rx, Rx, -0.5 * Ry, Ry, 10, 16);
        for (int i = 0; i < 20; ++i)
        {
            const ModeIndex mm{g.integer(-4, 4), g.integer(-3, 3)};
            const Vec2 kap(g.uniform(-1, 1) * k10.kappa0, g.uniform(-1, 1) * k10.kappa0);
            const cdouble q = rr.integrate([&](double x, double y) {
                return rx_basis_eval(mm, Vec2(x, y), Rx, Ry) * std::polar(1.0, -(kap(0) * x + kap(1) * y));
            });
            transform = std::max(transform, std::abs(rx_basis_ft(mm, kap, Rx, Ry) - q));
        }
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
            const ModeIndexSet m = mode_set(al.S_x, al.S_y, lambda, false);
            const ModeIndex n = m[static_cast<std::size_t>(g.integer(0, static_cast<int>(m.size()) - 1))];
            const Vec2 kap(g.uniform(-1, 1) * k10.kappa0, g.uniform(-1, 1) * k10.kappa0);
            const Rect pr(-0.5 * a.length_h, a.length_h, -0.5 * a.length_v, a.length_v, 6, 20);
            const cdouble q = pr.integrate([&](double u, double v) {
                const Vec3 p = a.point(u, v);
                const Vec3 sp = al.U * p;
                return tx_basis_eval(n, Vec2(sp(0), sp(1)), al.S_x, al.S_y) * std::polar(1.0, -(kap(0) * p(0) + kap(1) * p(1)));
            });
            transform = std::max(transform, std::abs(tx_basis_ft(n, kap, al) - q) / std::sqrt(al.S_x * al.S_y));
        }
        o.require(gram < 1e-10, "Gram " + fmt("%.2e", gram));
        o.require(parseval < 1e-8, "Parseval " + fmt("%.2e", parseval));
        o.require(transform < 1e-9, "sinc transforms " + fmt("%.2e", transform));
        o.note("Gram " + fmt("%.1e", gram) + ", Parseval " + fmt("%.1e", parseval) + ", transforms " + fmt("%.1e", transform));
        return o;
    }

    Outcome criterion3()
    {
        Outcome o;
        Desk &d = desk();
        d.assemble();
        const CMatrix &H = d.H[0];
        o.require(H.rows() == 243 && H.cols() == 75, "dimensions");
        QuadratureSpec fine = d.cfg.quadrature.doubled();
        const auto t0 = std::chrono::steady_clock::now();
        const CMatrix H2 = assemble_coupling(d.users[0], d.sc.rx, d.rx_modes, d.tx_modes[0], k10, fine).H;
        const double fine_s = seconds_since(t0);
        double scale = 0.0;
        for (Eigen::Index j = 0; j < H.rows(); j += 3)
            for (Eigen::Index i = 0; i < H.cols(); i += 3)
                scale = std::max(scale, H2.block<3, 3>(j, i).norm());
        double worst = 0.0;
        for (Eigen::Index j = 0; j < H.rows(); j += 3)
            for (Eigen::Index i = 0; i < H.cols(); i += 3)
            {
                const double ref = H2.block<3, 3>(j, i).norm();
                const double diff = (H.block<3, 3>(j, i) - H2.block<3, 3>(j, i)).norm();
                worst = std::max(worst, diff / std::max(ref, 1e-14 * scale));
            }
        o.require(worst < 1e-3, "block change " + fmt("%.2e", worst));
        o.require(d.first_user_s < 300.0, "assembly time");
        o.note(std::to_string(H.rows()) + "x" + std::to_string(H.cols()) + ", q=" +
               std::to_string(d.cfg.quadrature.nodes_per_wavelength) + " vs " + std::to_string(fine.nodes_per_wavelength) +
               " worst block rel change " + fmt("%.2e", worst) + ", assembly " + fmt("%.1f", d.first_user_s) + " s (doubled " +
               fmt("%.1f", fine_s) + " s)");
        return o;
    }

    Outcome criterion4()
    {
        Outcome o;
        const double R = lambda;
        const ModeIndexSet modes = mode_set(R, R, lambda, false);
        const CMatrix spectral = emi_covariance(modes, R, R, k10, {});
        const Rule1D g = composite_gauss_legendre(1, 14, -R / 2, R / 2);
        std::vector<Vec2> pts;
        std::vector<double> w;
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b)
            {
                pts.emplace_back(g.x[a], g.x[b]);
                w.push_back(g.w[a] * g.w[b]);
            }
        CMatrix spatial = CMatrix::Zero(spectral.rows(), spectral.cols());
        for (std::size_t p = 0; p < pts.size(); ++p)
            for (std::size_t q = 0; q < pts.size(); ++q)
            {
                const Vec3 dr(pts[p](0) - pts[q](0), pts[p](1) - pts[q](1), 0.0);
                const CMat3 rho = testing::rho_closed_form(dr, 1.0, k10.kappa0) * (w[p] * w[q]);
                for (std::size_t m = 0; m < modes.size(); ++m)
                {
                    const cdouble cm = std::conj(rx_basis_eval(modes[m], pts[p], R, R));
                    for (std::size_t n = 0; n < modes.size(); ++n)
                        spatial.block<3, 3>(3 * static_cast<Eigen::Index>(m), 3 * static_cast<Eigen::Index>(n)) +=
                            (cm * rx_basis_eval(modes[n], pts[q], R, R)) * rho;
                }
            }
        const double rel = testing::rel_diff(spectral, spatial);
        o.require(rel < 1e-4, "brute-force oracle " + fmt("%.2e", rel));

        Desk &d = desk();
        d.assemble();
        const double herm = (d.R_z - d.R_z.adjoint()).norm();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(d.R_z, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff();
        o.require(herm == 0.0, "Hermitian");
        o.require(lo >= d.sc.n0_half - 1e-12, "eigenvalue floor");
        o.note("spectral vs spatial rel " + fmt("%.2e", rel) + ", desk R_z min eig " + fmt("%.6e", lo) + " (N0/2 " +
               fmt("%.6e", d.sc.n0_half) + ")");
        return o;
    }

    Outcome criterion5()
    {
        Outcome o;
        testing::Gen g(5);
        double kkt = 0.0;
        for (int trial = 0; trial < 1000; ++trial)
        {
            const int n = g.integer(1, 30);
            std::vector<double> s(static_cast<std::size_t>(n));
            for (double &v : s)
                v = std::exp(g.uniform(-6.0, 4.0));
            const double P = std::exp(g.uniform(-8.0, 6.0));
            const WaterFill wf = water_fill(s, P);
            // Fine oracle: bisection on the water level.
            double lo = 0.0, hi = P;
            for (double v : s)
                hi = std::max(hi, P + 1.0 / (v * v));
            for (int it = 0; it < 200; ++it)
            {
                const double mid = 0.5 * (lo + hi);
                double used = 0.0;
                for (double v : s)
                    used += std::max(0.0, mid - 1.0 / (v * v));
                (used > P ? hi : lo) = mid;
            }
            const double mu = 0.5 * (lo + hi);
            double used = 0.0;
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                used += wf.q[i];
                kkt = std::max(kkt, std::abs(wf.q[i] - std::max(0.0, mu - 1.0 / (s[i] * s[i]))) / mu);
                // Stationarity: active channels sit exactly at the water level.
                if (wf.q[i] > 0.0)
                    kkt = std::max(kkt, std::abs(wf.q[i] + 1.0 / (s[i] * s[i]) - wf.mu) / wf.mu);
                else
                    kkt = std::max(kkt, std::max(0.0, wf.mu - 1.0 / (s[i] * s[i])) / wf.mu);
            }
            kkt = std::max(kkt, std::abs(used - P) / P);
        }
        o.require(kkt < 1e-9, "water-filling KKT " + fmt("%.2e", kkt));

        bool monotone = true;
        double fixed = 0.0, decouple = 0.0;
        for (int run = 0; run < 30; ++run)
        {
            const Eigen::Index rows = g.integer(3, 12);
            const int K = g.integer(2, 5);
            std::vector<CMatrix> H;
            std::vector<double> P;
            for (int k = 0; k < K; ++k)
            {
                H.push_back(g.cmatrix(rows, g.integer(1, 6)));
                P.push_back(std::exp(g.uniform(-2.0, 2.0)));
            }
            const AllocationResult r = iterative_water_filling(H, g.hpd(rows, 0.1), P);
            for (std::size_t i = 1; i < r.trace_per_iteration.size(); ++i)
                monotone = monotone && r.trace_per_iteration[i] >= r.trace_per_iteration[i - 1] - 1e-12;

            const CMatrix Rk = g.hpd(rows, 0.1);
            const AllocationResult one = iterative_water_filling({H[0]}, Rk, {P[0]});
            fixed = std::max(fixed, std::abs(one.trace_per_iteration.front() - one.sum_se) / one.sum_se);

            const CMatrix A = g.cmatrix(3, 2), B = g.cmatrix(4, 3);
            CMatrix H1 = CMatrix::Zero(7, 2), H2 = CMatrix::Zero(7, 3);
            H1.topRows(3) = A;
            H2.bottomRows(4) = B;
            const CMatrix I = CMatrix::Identity(7, 7) * g.uniform(0.1, 2.0);
            const double joint = iterative_water_filling({H1, H2}, I, {1.0, 3.0}).sum_se;
            const double a = iterative_water_filling({A}, I.topLeftCorner(3, 3), {1.0}).sum_se;
            const double b = iterative_water_filling({B}, I.bottomRightCorner(4, 4), {3.0}).sum_se;
            decouple = std::max(decouple, std::abs(joint - a - b) / (a + b));
        }
        o.require(monotone, "monotone trace");
        o.require(fixed < 1e-12, "K=1 fixed point " + fmt("%.2e", fixed));
        o.require(decouple < 1e-9, "decoupling " + fmt("%.2e", decouple));
        o.note("KKT gap " + fmt("%.1e", kkt) + ", monotone " + (monotone ? "yes" : "no") + ", K=1 first-iterate gap " +
               fmt("%.1e", fixed) + ", decoupling " + fmt("%.1e", decouple));
        return o;
    }

    Outcome criterion6()
    {
        Outcome o;
        Desk &d = desk();
        d.assemble();
        std::vector<double> p;
        for (const auto &u : d.sc.users)
            p.push_back(u.p_max);
        IwfOptions opt;
        opt.eps = 1e-10;
        opt.max_iter = 500;
        const auto t0 = std::chrono::steady_clock::now();
        const AllocationResult r = iterative_water_filling(d.H, d.R_z, p, opt);
        const double t = seconds_since(t0);
        int reached = -1;
        for (std::size_t i = 0; i < r.trace_per_iteration.size(); ++i)
            if (std::abs(r.trace_per_iteration[i] - r.sum_se) <= 1e-3 * r.sum_se)
            {
                reached = static_cast<int>(i) + 1;
                break;
            }
        o.require(r.converged, "convergence");
        o.require(reached >= 1 && reached <= 5, "within 0.1% after " + std::to_string(reached) + " iterations");
        o.require(t < 120.0, "optimizer time");
        o.note("sum SE " + fmt("%.6g", r.sum_se) + " bit/s/Hz, within 0.1% at iteration " + std::to_string(reached) + " of " +
               std::to_string(r.iterations) + ", optimizer " + fmt("%.2f", t) + " s (assembly " + fmt("%.1f", d.assembly_s) + " s)");
        return o;
    }

    std::map<std::pair<std::string, double>, double> by_scheme(const std::vector<ResultRow> &rows)
    {
        std::map<std::pair<std::string, double>, double> out;
        for (const auto &r : rows)
            out[{r.scheme, r.axis_value}] = r.sum_se;
        return out;
    }

    const std::vector<double> powers = {1e-6, 1e-5, 1e-4, 1e-3};

    std::vector<ResultRow> desk_rows()
    {
        static std::vector<ResultRow> rows = [] {
            SweepConfig c = parse_config("{}");
            c.values = powers;
            c.schemes = {Scheme::Equal, Scheme::Proposed, Scheme::Optimal, Scheme::Discrete};
            c.cache_dir = (work_dir() / "cache").string();
            return run_sweep(c);
        }();
        return rows;
    }

    Outcome criterion7()
    {
        Outcome o;
        const auto m = by_scheme(desk_rows());
        SweepConfig big = parse_config("{}");
        big.values = powers;
        big.schemes = {Scheme::Discrete};
        big.rx.length_h = big.rx.length_v = 2 * parse_config("{}").rx.length_h;
        big.cache_dir = (work_dir() / "cache").string();
        const auto mb = by_scheme(run_sweep(big));

        std::string trace;
        double worst_change = 0.0;
        for (double p : powers)
        {
            const double eq = m.at({"equal", p}), pr = m.at({"proposed", p}), op = m.at({"optimal", p});
            const double di = m.at({"discrete", p}), db = mb.at({"discrete", p});
            const std::string at = " at P=" + fmt("%.0e", p);
            o.require(std::isfinite(eq) && std::isfinite(pr) && std::isfinite(op) && std::isfinite(di), "finite" + at);
            o.require(eq <= pr, "equal <= proposed" + at);
            o.require(pr <= op, "proposed <= optimal" + at);
            o.require(di <= pr, "discrete <= proposed" + at);
            const double change = std::abs(db - di) / di;
            worst_change = std::max(worst_change, change);
            o.require(change < 0.01, "discrete 4x receiver change " + fmt("%.1f%%", 100 * change) + at);
            trace += (trace.empty() ? "" : " | ") + fmt("P=%.0e:", p) + " eq " + fmt("%.4g", eq) + " prop " + fmt("%.4g", pr) +
                     " opt " + fmt("%.4g", op) + " disc " + fmt("%.4g", di) + " disc4x " + fmt("%.4g", db);
        }
        const double gap = (m.at({"optimal", powers[0]}) - m.at({"proposed", powers[0]})) / m.at({"optimal", powers[0]});
        o.require(gap < 0.10, "low-power gap " + fmt("%.1f%%", 100 * gap));
        o.note("low-power gap " + fmt("%.2f%%", 100 * gap) + ", worst discrete change " + fmt("%.1f%%", 100 * worst_change));
        o.note(trace);
        return o;
    }

    // Proposed-scheme SE along one axis at a fixed total power.
    std::vector<double> trend(SweepConfig c, SweepAxis axis, const std::vector<double> &values, double power)
    {
        c.axis = axis;
        c.values = values;
        c.total_power = power;
        c.schemes = {Scheme::Proposed};
        c.cache_dir = (work_dir() / "cache").string();
        std::vector<double> out;
        for (const auto &r : run_sweep(c))
            out.push_back(r.sum_se);
        return out;
    }

    bool strictly(const std::vector<double> &v, bool increasing)
    {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(increasing ? v[i] > v[i - 1] : v[i] < v[i - 1]) || !std::isfinite(v[i]))
                return false;
        return !v.empty() && std::isfinite(v[0]);
    }

    std::string list(const std::vector<double> &v)
    {
        std::string s;
        for (double x : v)
            s += (s.empty() ? "" : "/") + fmt("%.4g", x);
        return s;
    }

    Outcome criterion8()
    {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        const SweepConfig desk_cfg = parse_config("{}");
        SweepConfig fixed = desk_cfg;
        fixed.rx.length_h = fixed.rx.length_v = 0.06;
        fixed.users.length_h = fixed.users.length_v = 0.03;

        const auto m = by_scheme(desk_rows());
        for (double p : {1e-5, 1e-4, 1e-3})
        {
            const std::string at = fmt(" P=%.0e", p);
            const auto f = trend(fixed, SweepAxis::Frequency, {10e9, 20e9, 28e9}, p);
            const auto d = trend(desk_cfg, SweepAxis::Distance, {50, 75, 100}, p);
            const auto tx = trend(desk_cfg, SweepAxis::TxSize, {lambda, 2 * lambda}, p);
            const auto rx = trend(desk_cfg, SweepAxis::RxSize, {2 * lambda, 4 * lambda}, p);
            o.require(strictly(f, true), "frequency" + at);
            o.require(strictly(d, false), "distance" + at);
            o.require(strictly(tx, true), "tx size" + at);
            o.require(strictly(rx, true), "rx size" + at);
            const double gain = m.at({"proposed", p}) - m.at({"equal", p});
            o.require(gain > 0.0, "colored-noise gain" + at);
            o.note(at.substr(1) + ": freq " + list(f) + ", dist " + list(d) + ", tx " + list(tx) + ", rx " + list(rx) +
                   ", optimized-equal " + fmt("%.3g", gain));
        }
        const double t = seconds_since(t0);
        o.require(t < 1800.0, "trend run time");
        o.note("trend run " + fmt("%.0f", t) + " s");
        return o;
    }

    Outcome criterion9()
    {
        Outcome o;
        const char *cfg_text = R"({
          "rx": {"length_h": 0.06, "length_v": 0.06},
          "users": {"count": 3, "radius": 40, "length_h": 0.03, "length_v": 0.03, "angle_jitter_rad": 0.1},
          "sweep": {"axis": "total_power", "values": [1e-6, 1e-4]},
          "schemes": ["proposed", "equal", "discrete", "optimal"],
          "seed": 7
        })";
        const SweepConfig c = parse_config(cfg_text);
        const std::string a = format_csv(run_sweep(c));
        const std::string b = format_csv(run_sweep(c));
        const int saved = max_threads();
        set_threads(saved > 1 ? 1 : 2);
        const std::string t = format_csv(run_sweep(c));
        set_threads(saved);
        SweepConfig cached = c;
        cached.cache_dir = (work_dir() / "cache9").string();
        const std::string d1 = format_csv(run_sweep(cached));
        const std::string d2 = format_csv(run_sweep(cached));
        MatrixCache::clear(cached.cache_dir);
        o.require(a == b, "repeat run");
        o.require(a == t, "worker count");
        o.require(a == d1 && a == d2, "disk cache");
        o.require(a.find("error:") == std::string::npos, "no error rows");
        o.note(std::to_string(a.size()) + " bytes identical across repeat, worker-count and cached runs");
        return o;
    }
}

int main()
{
    configure_threads_from_env();
    const std::vector<std::pair<int, std::function<Outcome()>>> all = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}};
    const std::map<int, const char *> names = {
        {1, "EM kernel suite"},       {2, "basis suite"},      {3, "coupling convergence"},
        {4, "noise assembly"},        {5, "optimizer suite"},  {6, "convergence speed"},
        {7, "scheme ordering"},       {8, "trend suite"},      {9, "determinism"}};
    const std::map<int, double> budget = {{1, 10.0}, {2, 30.0}};

    int failed = 0;
    for (const auto &[id, fn] : all)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const Error &e)
        {
            o.pass = false;
            o.detail = std::string("error ") + e.name() + ": " + e.what();
        }
        catch (const std::exception &e)
        {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double t = seconds_since(t0);
        if (budget.count(id) && t >= budget.at(id))
            o.require(false, "runtime budget " + fmt("%.0f s", budget.at(id)));
        std::printf("[%s] criterion %d (%s): %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, names.at(id),
                    o.detail.c_str(), t);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    fs::remove_all(work_dir());
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
