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

#include "hmimo/noise_model.hpp"
#include "hmimo/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace hmimo
{
    namespace
    {
        // The receiver lies in z = 0, so the transforms depend only on the
        // in-plane wave vector. Nodes at +u and -u are folded into one row.
        struct PolarRow
        {
            double u;
            double theta_plus, theta_minus;
            double w_plus, w_minus;
        };

        struct Setup
        {
            std::vector<PolarRow> rows;
            int n_phi = 0;
            std::size_t M = 0;
            std::size_t packed = 0;
        };

        Setup make_setup(const ModeIndexSet &modes, double R_x, double R_y, const PhysicalConstants &k,
                         const AngularQuadSpec &quad)
        {
            if (!(R_x > 0.0) || !(R_y > 0.0))
                throw Error(Errc::NonPositiveAperture, "receiver extents must be positive");
            const double ext = std::hypot(R_x, R_y) / k.lambda;
            quad.check(ext);
            const Rule1D g = gauss_legendre(quad.theta_nodes(ext), -1.0, 1.0);
            const std::size_t n = g.size();
            Setup s;
            for (std::size_t i = n / 2 + n % 2; i < n; ++i)
            {
                const std::size_t mirror = n - 1 - i;
                s.rows.push_back({g.x[i], std::acos(g.x[i]), std::acos(g.x[mirror]), g.w[i], g.w[mirror]});
            }
            if (n % 2 == 1)
                s.rows.insert(s.rows.begin(), PolarRow{0.0, 0.5 * std::numbers::pi, 0.5 * std::numbers::pi, g.w[n / 2], 0.0});
            s.n_phi = quad.phi_nodes(ext);
            s.M = modes.size();
            s.packed = s.M * (s.M + 1) / 2;
            return s;
        }

        // Adds the contributions of one polar row to acc, laid out as six
        // component planes of packed upper-triangle entries.
        void accumulate_row(std::vector<double> &acc, std::vector<double> &A, const PolarRow &row, const Setup &s,
                            const ModeIndexSet &modes, double R_x, double R_y, const PhysicalConstants &k,
                            const AngularDensity &density)
        {
            const double st = std::sqrt(std::max(0.0, 1.0 - row.u * row.u));
            const double wphi = 2.0 * std::numbers::pi / s.n_phi;
            const double iso = 1.0 / (4.0 * std::numbers::pi);
            for (int j = 0; j < s.n_phi; ++j)
            {
                const double phi = -std::numbers::pi + j * wphi;
                const double hx = st * std::cos(phi), hy = st * std::sin(phi);
                const double fp = density ? density(row.theta_plus, phi) : iso;
                const double fm = density ? density(row.theta_minus, phi) : iso;
                const double cp = row.w_plus * wphi * fp, cm = row.w_minus * wphi * fm;
                const double sum = cp + cm, diff = cp - cm;
                const std::array<double, 6> W = {sum * (1.0 - hx * hx), -sum * hx * hy, -diff * hx * row.u,
                                                 sum * (1.0 - hy * hy), -diff * hy * row.u, sum * (1.0 - row.u * row.u)};

                const Vec2 kxy(k.kappa0 * hx, k.kappa0 * hy);
                for (std::size_t m = 0; m < s.M; ++m)
                    A[m] = rx_basis_ft_real(modes[m], kxy, R_x, R_y);

                std::size_t idx = 0;
                for (std::size_t a = 0; a < s.M; ++a)
                {
                    const std::size_t len = s.M - a;
                    for (int c = 0; c < 6; ++c)
                    {
                        const double wa = W[c] * A[a];
                        double *dst = acc.data() + c * s.packed + idx;
                        const double *src = A.data() + a;
                        for (std::size_t b = 0; b < len; ++b)
                            dst[b] += wa * src[b];
                    }
                    idx += len;
                }
            }
        }

        CMatrix unpack(const std::vector<double> &acc, const Setup &s)
        {
            const Eigen::Index M3 = 3 * static_cast<Eigen::Index>(s.M);
            CMatrix R = CMatrix::Zero(M3, M3);
            static const int comp[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
            std::size_t idx = 0;
            for (std::size_t a = 0; a < s.M; ++a)
                for (std::size_t b = a; b < s.M; ++b, ++idx)
                    for (int p = 0; p < 3; ++p)
                        for (int q = 0; q < 3; ++q)
                        {
                            const double v = acc[comp[p][q] * s.packed + idx];
                            R(3 * a + p, 3 * b + q) = v;
                            R(3 * b + q, 3 * a + p) = v;
                        }
            return R;
        }

        constexpr std::size_t rows_per_chunk = 4;
    }

    CMatrix emi_covariance(const ModeIndexSet &rx_modes, double R_x, double R_y, const PhysicalConstants &k,
                           const AngularQuadSpec &quad, const AngularDensity &density)
    {
        const Setup s = make_setup(rx_modes, R_x, R_y, k, quad);
        const std::size_t chunks = (s.rows.size() + rows_per_chunk - 1) / rows_per_chunk;
        std::vector<std::vector<double>> partial(chunks);

#pragma omp parallel
        {
            std::vector<double> A(s.M);
#pragma omp for schedule(dynamic, 1)
            for (long ci = 0; ci < static_cast<long>(chunks); ++ci)
            {
                std::vector<double> acc(6 * s.packed, 0.0);
                const std::size_t lo = static_cast<std::size_t>(ci) * rows_per_chunk;
                const std::size_t hi = std::min(s.rows.size(), lo + rows_per_chunk);
                for (std::size_t r = lo; r < hi; ++r)
                    accumulate_row(acc, A, s.rows[r], s, rx_modes, R_x, R_y, k, density);
                partial[static_cast<std::size_t>(ci)] = std::move(acc);
            }
        }

        std::vector<double> total(6 * s.packed, 0.0);
        for (const auto &p : partial)
            for (std::size_t i = 0; i < total.size(); ++i)
                total[i] += p[i];
        return unpack(total, s);
    }

    NoiseCovariance noise_covariance(const CMatrix &R_emi, double sigma_emi2, double n0_half)
    {
        if (R_emi.rows() != R_emi.cols())
            throw Error(Errc::DimensionMismatch, "interference covariance must be square");
        if (!(sigma_emi2 >= 0.0) || !(n0_half > 0.0))
            throw Error(Errc::BadNoiseDensity, "noise densities must satisfy sigma_emi2 >= 0 and n0_half > 0");
        const double scale = R_emi.norm();
        if ((R_emi - R_emi.adjoint()).norm() > 1e-12 * std::max(scale, 1e-300))
            throw Error(Errc::NotPSD, "interference covariance is not Hermitian");
        if (scale > 0.0)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(R_emi, Eigen::EigenvaluesOnly);
            const double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().cwiseAbs().maxCoeff();
            if (lo < -1e-10 * hi)
                throw Error(Errc::NotPSD, "interference covariance has a negative eigenvalue");
        }
        NoiseCovariance nc;
        nc.R_emi = R_emi;
        nc.sigma_emi2 = sigma_emi2;
        nc.n0_half = n0_half;
        nc.R_z = sigma_emi2 * R_emi;
        nc.R_z.diagonal().array() += n0_half;
        return nc;
    }

    namespace reference
    {
        CMatrix emi_covariance(const ModeIndexSet &rx_modes, double R_x, double R_y, const PhysicalConstants &k,
                               const AngularQuadSpec &quad, const AngularDensity &density)
        {
            const Setup s = make_setup(rx_modes, R_x, R_y, k, quad);
            std::vector<double> acc(6 * s.packed, 0.0), A(s.M);
            for (const PolarRow &row : s.rows)
                accumulate_row(acc, A, row, s, rx_modes, R_x, R_y, k, density);
            return unpack(acc, s);
        }
    }
}
