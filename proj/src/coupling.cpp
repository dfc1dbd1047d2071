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

#include "hmimo/coupling.hpp"
#include "hmimo/quadrature.hpp"

#include <array>
#include <cmath>

#include <omp.h>

namespace hmimo
{
    namespace
    {
        // Unique entries of a complex symmetric 3x3 block: xx, xy, xz, yy, yz, zz.
        using Sym6 = std::array<cdouble, 6>;
        using Proj6 = std::array<double, 6>;

        struct Nodes
        {
            std::vector<Vec3> rx_pos;
            std::vector<Vec3> tx_pos;
            // conj(psi_m(r)) w_r, row-major [r][m]
            std::vector<cdouble> rx_weight;
            // phi_n(s') w_s, row-major [s][n]
            std::vector<cdouble> tx_weight;
            std::size_t M = 0, N = 0;
        };

        int panels_for(double extent, double lambda)
        {
            return std::max(1, static_cast<int>(std::ceil(extent / lambda - 1e-9)));
        }

        Nodes build_nodes(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes,
                          const ModeIndexSet &tx_modes, const PhysicalConstants &k, const QuadratureSpec &q)
        {
            q.validate();
            const double Rx = rx.length_h, Ry = rx.length_v;
            const auto &al = user.aligned;
            const Rule1D rx_x = composite_gauss_legendre(panels_for(Rx, k.lambda), q.nodes_per_wavelength, -0.5 * Rx, 0.5 * Rx);
            const Rule1D rx_y = composite_gauss_legendre(panels_for(Ry, k.lambda), q.nodes_per_wavelength, -0.5 * Ry, 0.5 * Ry);
            const Rule1D tx_x = composite_gauss_legendre(panels_for(al.S_x, k.lambda), q.nodes_per_wavelength, al.s_x0, al.s_x0 + al.S_x);
            const Rule1D tx_y = composite_gauss_legendre(panels_for(al.S_y, k.lambda), q.nodes_per_wavelength, al.s_y0, al.s_y0 + al.S_y);

            Nodes nd;
            nd.M = rx_modes.size();
            nd.N = tx_modes.size();
            for (std::size_t a = 0; a < rx_x.size(); ++a)
                for (std::size_t b = 0; b < rx_y.size(); ++b)
                {
                    const Vec2 r(rx_x.x[a], rx_y.x[b]);
                    const double w = rx_x.w[a] * rx_y.w[b];
                    nd.rx_pos.emplace_back(r(0), r(1), 0.0);
                    for (std::size_t m = 0; m < nd.M; ++m)
                        nd.rx_weight.push_back(std::conj(rx_basis_eval(rx_modes[m], r, Rx, Ry)) * w);
                }
            for (std::size_t a = 0; a < tx_x.size(); ++a)
                for (std::size_t b = 0; b < tx_y.size(); ++b)
                {
                    const Vec2 s(tx_x.x[a], tx_y.x[b]);
                    const double w = tx_x.w[a] * tx_y.w[b];
                    nd.tx_pos.push_back(al.to_world(s(0), s(1)));
                    for (std::size_t n = 0; n < nd.N; ++n)
                        nd.tx_weight.push_back(tx_basis_eval(tx_modes[n], s, al.S_x, al.S_y) * w);
                }
            return nd;
        }

        inline Proj6 projector(const Vec3 &p)
        {
            return {1.0 - p(0) * p(0), -p(0) * p(1), -p(0) * p(2), 1.0 - p(1) * p(1), -p(1) * p(2), 1.0 - p(2) * p(2)};
        }

        inline void accumulate(Sym6 &acc, cdouble c, const Proj6 &p)
        {
            for (int e = 0; e < 6; ++e)
                acc[e] += c * p[e];
        }

        inline void accumulate(Sym6 &acc, cdouble c, const Sym6 &t)
        {
            for (int e = 0; e < 6; ++e)
                acc[e] += c * t[e];
        }

        CMat3 expand(const Sym6 &s)
        {
            CMat3 b;
            b << s[0], s[1], s[2], s[1], s[3], s[4], s[2], s[4], s[5];
            return b;
        }

        void check_distance(const UserGeometry &user, const ApertureSpec &rx, const PhysicalConstants &k)
        {
            if (!(min_distance(user.spec, rx) >= 10.0 * k.lambda))
                throw Error(Errc::TooClose, "user aperture closer than 10 wavelengths to the receiver");
        }

        // Inner source sum for one receive node and one transmit mode; both
        // code paths go through here so they share the operation order.
        inline void source_sum(Sym6 &t, const Nodes &nd, const Vec3 &r, std::size_t n, const PhysicalConstants &k)
        {
            for (std::size_t s = 0; s < nd.tx_pos.size(); ++s)
            {
                const GreenTerm g = green_term(r, nd.tx_pos[s], k);
                accumulate(t, g.g * nd.tx_weight[s * nd.N + n], projector(g.phat));
            }
        }

        CouplingMatrix assemble_once(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes,
                                     const ModeIndexSet &tx_modes, const PhysicalConstants &k,
                                     const QuadratureSpec &q, std::size_t user_id)
        {
            const Nodes nd = build_nodes(user, rx, rx_modes, tx_modes, k, q);
            const std::size_t R = nd.rx_pos.size(), M = nd.M, N = nd.N;

            // Phase 1: per receive node, partial field of every transmit mode.
            std::vector<Sym6> T(R * N);
#pragma omp parallel for schedule(static)
            for (long ri = 0; ri < static_cast<long>(R); ++ri)
            {
                const std::size_t r = static_cast<std::size_t>(ri);
                for (std::size_t n = 0; n < N; ++n)
                {
                    Sym6 t{};
                    source_sum(t, nd, nd.rx_pos[r], n, k);
                    T[r * N + n] = t;
                }
            }

            // Phase 2: project onto the receive modes, summing nodes in order.
            CouplingMatrix out;
            out.user = user_id;
            out.rx_modes = rx_modes;
            out.tx_modes = tx_modes;
            out.H.resize(3 * static_cast<Eigen::Index>(M), 3 * static_cast<Eigen::Index>(N));
#pragma omp parallel for schedule(static)
            for (long mi = 0; mi < static_cast<long>(M); ++mi)
            {
                const std::size_t m = static_cast<std::size_t>(mi);
                for (std::size_t n = 0; n < N; ++n)
                {
                    Sym6 acc{};
                    for (std::size_t r = 0; r < R; ++r)
                        accumulate(acc, nd.rx_weight[r * M + m], T[r * N + n]);
                    out.H.block<3, 3>(3 * mi, 3 * static_cast<Eigen::Index>(n)) = expand(acc);
                }
            }
            return out;
        }
    }

    void QuadratureSpec::validate() const
    {
        if (nodes_per_wavelength < 4)
            throw Error(Errc::ValidationError, "nodes_per_wavelength must be at least 4");
        if (!(doubling_tolerance > 0.0))
            throw Error(Errc::ValidationError, "doubling tolerance must be positive");
    }

    QuadratureSpec QuadratureSpec::doubled() const
    {
        QuadratureSpec d = *this;
        d.nodes_per_wavelength *= 2;
        d.doubling_check = false;
        return d;
    }

    UserGeometry UserGeometry::from(const ApertureSpec &spec, double lambda)
    {
        return {spec, align_aperture(spec, lambda)};
    }

    CMat3 coupling_block(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes, ModeIndex m,
                         const ModeIndexSet &tx_modes, ModeIndex n, const PhysicalConstants &k,
                         const QuadratureSpec &q)
    {
        check_distance(user, rx, k);
        const long mj = rx_modes.find(m), ni = tx_modes.find(n);
        if (mj < 0 || ni < 0)
            throw Error(Errc::DimensionMismatch, "mode not present in its index set");
        const Nodes nd = build_nodes(user, rx, rx_modes, tx_modes, k, q);
        Sym6 acc{};
        for (std::size_t r = 0; r < nd.rx_pos.size(); ++r)
        {
            Sym6 t{};
            source_sum(t, nd, nd.rx_pos[r], static_cast<std::size_t>(ni), k);
            accumulate(acc, nd.rx_weight[r * nd.M + static_cast<std::size_t>(mj)], t);
        }
        CMat3 b = expand(acc);
        if (q.doubling_check)
        {
            const CMat3 fine = coupling_block(user, rx, rx_modes, m, tx_modes, n, k, q.doubled());
            if ((fine - b).norm() > q.doubling_tolerance * fine.norm())
                throw Error(Errc::QuadratureUnderresolved, "coupling block changed beyond tolerance under refinement");
            b = fine;
        }
        return b;
    }

    CouplingMatrix assemble_coupling(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes,
                                     const ModeIndexSet &tx_modes, const PhysicalConstants &k,
                                     const QuadratureSpec &q, std::size_t user_id)
    {
        check_distance(user, rx, k);
        CouplingMatrix c = assemble_once(user, rx, rx_modes, tx_modes, k, q, user_id);
        if (q.doubling_check)
        {
            CouplingMatrix fine = assemble_once(user, rx, rx_modes, tx_modes, k, q.doubled(), user_id);
            for (std::size_t j = 0; j < rx_modes.size(); ++j)
                for (std::size_t i = 0; i < tx_modes.size(); ++i)
                    if ((fine.block(j, i) - c.block(j, i)).norm() > q.doubling_tolerance * fine.block(j, i).norm())
                        throw Error(Errc::QuadratureUnderresolved,
                                    "coupling block (" + std::to_string(j) + "," + std::to_string(i) +
                                        ") changed beyond tolerance under refinement");
            return fine;
        }
        return c;
    }

    CVector field_projection(const CouplingMatrix &coupling, const CVector &xi)
    {
        if (xi.size() != coupling.H.cols())
            throw Error(Errc::DimensionMismatch, "coefficient vector does not match the coupling matrix");
        return coupling.H * xi;
    }

    namespace reference
    {
        CouplingMatrix assemble_coupling(const UserGeometry &user, const ApertureSpec &rx,
                                         const ModeIndexSet &rx_modes, const ModeIndexSet &tx_modes,
                                         const PhysicalConstants &k, const QuadratureSpec &q, std::size_t user_id)
        {
            QuadratureSpec plain = q;
            plain.doubling_check = false;
            CouplingMatrix out;
            out.user = user_id;
            out.rx_modes = rx_modes;
            out.tx_modes = tx_modes;
            out.H.resize(3 * static_cast<Eigen::Index>(rx_modes.size()), 3 * static_cast<Eigen::Index>(tx_modes.size()));
            for (std::size_t j = 0; j < rx_modes.size(); ++j)
                for (std::size_t i = 0; i < tx_modes.size(); ++i)
                    out.H.block<3, 3>(3 * static_cast<Eigen::Index>(j), 3 * static_cast<Eigen::Index>(i)) =
                        coupling_block(user, rx, rx_modes, rx_modes[j], tx_modes, tx_modes[i], k, plain);
            return out;
        }
    }
}
