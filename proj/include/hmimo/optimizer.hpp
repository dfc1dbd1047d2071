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

#include <vector>

#include "hmimo/coupling.hpp"
#include "hmimo/types.hpp"

namespace hmimo
{
    struct UserCovariance
    {
        CMatrix Q;
    };

    struct AllocationResult
    {
        std::vector<UserCovariance> covariances;
        double sum_se = 0.0;
        std::vector<double> water_levels;
        int iterations = 0;
        std::vector<double> trace_per_iteration;
        bool converged = false;
    };

    std::vector<CMatrix> channels_of(const std::vector<CouplingMatrix> &couplings);

    // log2 det(R_z + sum H Q H^H) - log2 det(R_z), evaluated through a
    // Cholesky factor of R_z and low-rank factors of each Q.
    double sum_rate(const std::vector<CMatrix> &H, const std::vector<UserCovariance> &covs, const CMatrix &R_z);
    double sum_rate(const std::vector<CouplingMatrix> &couplings, const std::vector<UserCovariance> &covs,
                    const CMatrix &R_z);

    enum class Whitening
    {
        Eigen,   // B = U L U^H, H~ = L^{-1/2} U^H H
        Cholesky // B = L L^H, H~ = L^{-1} H; same singular values and right vectors
    };

    struct Decomposition
    {
        RVector sigma; // length cols(H), descending, zero padded
        CMatrix T;     // cols(H) x cols(H) unitary
        CMatrix F;     // rows(H) x min(rows, cols)
        CMatrix H_tilde;
    };

    Decomposition whiten_and_decompose(const CMatrix &B, const CMatrix &H, Whitening method = Whitening::Eigen);

    struct WaterFill
    {
        std::vector<double> q;
        double mu = 0.0;
    };

    // Exact water level by a scan over the sorted breakpoints 1/sigma^2.
    // Zero entries of sigma are inactive channels.
    WaterFill water_fill(const std::vector<double> &sigma, double P);

    struct IwfOptions
    {
        double eps = 1e-6;
        int max_iter = 100;
        Whitening whitening = Whitening::Cholesky;
        double rank_floor = 1e-12;
    };

    // Gauss-Seidel iterative water-filling from Q_k = 0. When max_iter is hit
    // the last iterate is returned with converged = false.
    AllocationResult iterative_water_filling(const std::vector<CMatrix> &H, const CMatrix &R_z,
                                             const std::vector<double> &p_max, const IwfOptions &opt = {});

    std::vector<UserCovariance> equal_power_allocation(const std::vector<CMatrix> &H, const std::vector<double> &p_max);
}
