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

#include "hmimo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hmimo
{
    namespace
    {
        Eigen::LLT<CMatrix> factor_noise(const CMatrix &R_z)
        {
            Eigen::LLT<CMatrix> llt(R_z);
            if (llt.info() != Eigen::Success)
                throw Error(Errc::SingularNoise, "noise covariance is not positive definite");
            return llt;
        }

        // log2 det(I + W^H W) with W = L^{-1} [G_1 ... G_K].
        double factored_rate(const Eigen::LLT<CMatrix> &llt, const std::vector<CMatrix> &G)
        {
            Eigen::Index cols = 0;
            for (const auto &g : G)
                cols += g.cols();
            if (cols == 0)
                return 0.0;
            CMatrix W(G.front().rows(), cols);
            Eigen::Index at = 0;
            for (const auto &g : G)
            {
                W.middleCols(at, g.cols()) = g;
                at += g.cols();
            }
            llt.matrixL().solveInPlace(W);
            CMatrix S = CMatrix::Identity(cols, cols);
            S.selfadjointView<Eigen::Lower>().rankUpdate(W.adjoint());
            // I + W^H W has eigenvalues >= 1, so its Cholesky factor exists.
            Eigen::LLT<CMatrix, Eigen::Lower> chol(S);
            double ld = 0.0;
            for (Eigen::Index i = 0; i < cols; ++i)
                ld += 2.0 * std::log(chol.matrixLLT()(i, i).real());
            return std::max(0.0, ld / std::log(2.0));
        }

        // H V sqrt(E) for the PSD part of Q.
        CMatrix low_rank_factor(const CMatrix &H, const CMatrix &Q)
        {
            if (Q.rows() != H.cols() || Q.cols() != H.cols())
                throw Error(Errc::DimensionMismatch, "covariance does not match its channel");
            Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (Q + Q.adjoint()));
            const RVector &e = es.eigenvalues();
            const double top = e.cwiseAbs().maxCoeff();
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = 0; i < e.size(); ++i)
                if (e(i) > 1e-14 * top)
                    keep.push_back(i);
            CMatrix V(Q.rows(), static_cast<Eigen::Index>(keep.size()));
            for (std::size_t c = 0; c < keep.size(); ++c)
                V.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) * std::sqrt(e(keep[c]));
            return H * V;
        }
    }

    std::vector<CMatrix> channels_of(const std::vector<CouplingMatrix> &couplings)
    {
        std::vector<CMatrix> H;
        H.reserve(couplings.size());
        for (const auto &c : couplings)
            H.push_back(c.H);
        return H;
    }

    double sum_rate(const std::vector<CMatrix> &H, const std::vector<UserCovariance> &covs, const CMatrix &R_z)
    {
        if (H.size() != covs.size())
            throw Error(Errc::DimensionMismatch, "one covariance per user is required");
        std::vector<CMatrix> G;
        for (std::size_t k = 0; k < H.size(); ++k)
        {
            if (H[k].rows() != R_z.rows())
                throw Error(Errc::DimensionMismatch, "channel rows do not match the noise covariance");
            G.push_back(low_rank_factor(H[k], covs[k].Q));
        }
        return factored_rate(factor_noise(R_z), G);
    }

    double sum_rate(const std::vector<CouplingMatrix> &couplings, const std::vector<UserCovariance> &covs,
                    const CMatrix &R_z)
    {
        return sum_rate(channels_of(couplings), covs, R_z);
    }

    Decomposition whiten_and_decompose(const CMatrix &B, const CMatrix &H, Whitening method)
    {
        if (B.rows() != B.cols() || B.rows() != H.rows())
            throw Error(Errc::DimensionMismatch, "whitening matrix does not match the channel");
        Decomposition d;
        if (method == Whitening::Eigen)
        {
            Eigen::SelfAdjointEigenSolver<CMatrix> es(B);
            if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
                throw Error(Errc::NotPD, "equivalent noise is not positive definite");
            d.H_tilde = es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() * (es.eigenvectors().adjoint() * H);
        }
        else
        {
            Eigen::LLT<CMatrix> llt(B);
            if (llt.info() != Eigen::Success)
                throw Error(Errc::NotPD, "equivalent noise is not positive definite");
            d.H_tilde = llt.matrixL().solve(H);
        }

        const Eigen::Index n = H.cols();
        const bool wide = H.rows() < n;
        Eigen::BDCSVD<CMatrix> svd(d.H_tilde, Eigen::ComputeThinU | (wide ? Eigen::ComputeFullV : Eigen::ComputeThinV));
        d.sigma = RVector::Zero(n);
        d.sigma.head(svd.singularValues().size()) = svd.singularValues();
        d.T = svd.matrixV();
        d.F = svd.matrixU();
        return d;
    }

    WaterFill water_fill(const std::vector<double> &sigma, double P)
    {
        if (!(P >= 0.0))
            throw Error(Errc::NegativePower, "power budget must be non-negative");
        WaterFill out;
        out.q.assign(sigma.size(), 0.0);
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < sigma.size(); ++i)
            if (sigma[i] > 0.0)
                active.push_back(i);
        if (active.empty())
            return out;

        std::vector<double> a(sigma.size());
        for (std::size_t i : active)
            a[i] = 1.0 / (sigma[i] * sigma[i]);
        std::stable_sort(active.begin(), active.end(), [&](std::size_t p, std::size_t q) { return a[p] < a[q]; });

        double partial = 0.0, mu = 0.0;
        std::size_t used = active.size();
        for (std::size_t k = 1; k <= active.size(); ++k)
        {
            partial += a[active[k - 1]];
            mu = (P + partial) / static_cast<double>(k);
            if (k == active.size() || mu <= a[active[k]])
            {
                used = k;
                break;
            }
        }
        for (std::size_t k = 0; k < used; ++k)
            out.q[active[k]] = std::max(0.0, mu - a[active[k]]);
        out.mu = mu;
        return out;
    }

    AllocationResult iterative_water_filling(const std::vector<CMatrix> &H, const CMatrix &R_z,
                                             const std::vector<double> &p_max, const IwfOptions &opt)
    {
        const std::size_t K = H.size();
        if (K == 0)
            throw Error(Errc::NoUsers, "optimizer needs at least one user");
        if (p_max.size() != K)
            throw Error(Errc::DimensionMismatch, "one power budget per user is required");
        if (!(opt.eps > 0.0) || opt.max_iter < 1)
            throw Error(Errc::ValidationError, "optimizer needs eps > 0 and max_iter >= 1");
        for (std::size_t k = 0; k < K; ++k)
        {
            if (H[k].rows() != R_z.rows())
                throw Error(Errc::DimensionMismatch, "channel rows do not match the noise covariance");
            if (!(p_max[k] >= 0.0))
                throw Error(Errc::NegativePower, "power budget must be non-negative");
        }
        const Eigen::LLT<CMatrix> llt = factor_noise(R_z);
        const Eigen::Index rows = R_z.rows();

        AllocationResult res;
        res.covariances.resize(K);
        res.water_levels.assign(K, 0.0);
        std::vector<CMatrix> G(K);
        for (std::size_t k = 0; k < K; ++k)
        {
            res.covariances[k].Q = CMatrix::Zero(H[k].cols(), H[k].cols());
            G[k] = CMatrix(rows, 0);
        }

        double prev = 0.0;
        for (int it = 1; it <= opt.max_iter; ++it)
        {
            for (std::size_t k = 0; k < K; ++k)
            {
                CMatrix B = R_z;
                for (std::size_t o = 0; o < K; ++o)
                    if (o != k && G[o].cols() > 0)
                        B.selfadjointView<Eigen::Lower>().rankUpdate(G[o]);
                B.triangularView<Eigen::StrictlyUpper>() = B.adjoint();

                const Decomposition d = whiten_and_decompose(B, H[k], opt.whitening);
                std::vector<double> s(d.sigma.data(), d.sigma.data() + d.sigma.size());
                const double smax = s.empty() ? 0.0 : *std::max_element(s.begin(), s.end());
                for (double &v : s)
                    if (v < opt.rank_floor * smax)
                        v = 0.0;
                const WaterFill wf = water_fill(s, p_max[k]);

                std::vector<Eigen::Index> on;
                for (std::size_t i = 0; i < wf.q.size(); ++i)
                    if (wf.q[i] > 0.0)
                        on.push_back(static_cast<Eigen::Index>(i));
                CMatrix Tq(H[k].cols(), static_cast<Eigen::Index>(on.size()));
                for (std::size_t c = 0; c < on.size(); ++c)
                    Tq.col(static_cast<Eigen::Index>(c)) = d.T.col(on[c]) * std::sqrt(wf.q[static_cast<std::size_t>(on[c])]);
                CMatrix Q = Tq * Tq.adjoint();
                res.covariances[k].Q = 0.5 * (Q + Q.adjoint());
                G[k] = H[k] * Tq;
                res.water_levels[k] = wf.mu;
            }
            const double cur = factored_rate(llt, G);
            res.trace_per_iteration.push_back(cur);
            res.iterations = it;
            res.sum_se = cur;
            if (std::abs(cur - prev) <= opt.eps)
            {
                res.converged = true;
                break;
            }
            prev = cur;
        }
        return res;
    }

    std::vector<UserCovariance> equal_power_allocation(const std::vector<CMatrix> &H, const std::vector<double> &p_max)
    {
        if (p_max.size() != H.size())
            throw Error(Errc::DimensionMismatch, "one power budget per user is required");
        std::vector<UserCovariance> out;
        for (std::size_t k = 0; k < H.size(); ++k)
        {
            if (!(p_max[k] >= 0.0))
                throw Error(Errc::NegativePower, "power budget must be non-negative");
            const Eigen::Index n = H[k].cols();
            out.push_back({CMatrix::Identity(n, n) * (p_max[k] / static_cast<double>(n))});
        }
        return out;
    }
}
