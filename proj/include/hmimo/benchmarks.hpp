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

#include "hmimo/em_fields.hpp"
#include "hmimo/geometry.hpp"
#include "hmimo/optimizer.hpp"

namespace hmimo
{
    struct ElementCounts
    {
        int h = 1;
        int v = 1;
        int total() const { return h * v; }
    };

    // Half-wavelength arrays: ceil(2L/lambda) elements per side, patch
    // centers on a uniform partition of each aperture.
    struct DiscreteArraySpec
    {
        double spacing = 0.0;
        std::vector<ElementCounts> users;
        ElementCounts rx;

        static DiscreteArraySpec for_scenario(const Scenario &s);
    };

    ElementCounts element_counts(const ApertureSpec &a, double lambda);

    // Patch centers of an n_h x n_v partition, h index outer.
    std::vector<Vec3> element_positions(const ApertureSpec &a, ElementCounts n);

    // Block (j, i) = patch integral of G(r_j, s) over source patch i, by the
    // midpoint rule (sub = 1) or a sub x sub midpoint refinement.
    CMatrix discrete_channel(const ApertureSpec &user, ElementCounts tx, const std::vector<Vec3> &rx_positions,
                             const PhysicalConstants &k, int sub = 1);

    // Block (j, j') = sigma_emi2 rho(r_j - r_j') plus n0_half I on the
    // diagonal. Distinct offsets are evaluated once, in parallel.
    CMatrix discrete_noise_covariance(const std::vector<Vec3> &rx_positions, double sigma_emi2, double n0_half,
                                      const PhysicalConstants &k, const AngularQuadSpec &quad);

    AllocationResult discrete_benchmark_se(const Scenario &s, const DiscreteArraySpec &spec,
                                           const std::vector<double> &p_max, const AngularQuadSpec &quad,
                                           const IwfOptions &opt = {});

    // Nystrom discretization of the continuous channel on midpoint grids of
    // grid_per_wavelength cells per wavelength, with the matching noise,
    // optimized by the same water-filling. Throws GridTooCoarse below 4.
    AllocationResult optimal_decomposition_se(const Scenario &s, double grid_per_wavelength,
                                              const std::vector<double> &p_max, const AngularQuadSpec &quad,
                                              const IwfOptions &opt = {});

    namespace reference
    {
        // Evaluates every element pair directly, serially.
        CMatrix discrete_noise_covariance(const std::vector<Vec3> &rx_positions, double sigma_emi2, double n0_half,
                                          const PhysicalConstants &k, const AngularQuadSpec &quad);
    }
}
