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

#include <functional>
#include <numbers>

#include "hmimo/types.hpp"

namespace hmimo
{
    struct PhysicalConstants
    {
        static constexpr double c = 3e8;
        static constexpr double mu0 = 4e-7 * std::numbers::pi;
        static constexpr double eta = 120.0 * std::numbers::pi;

        double frequency = 0.0;
        double lambda = 0.0;
        double kappa0 = 0.0;
        double omega = 0.0;

        static PhysicalConstants at(double frequency_hz);
    };

    // Radiating-field dyadic Green's function between receive point r and
    // source point s. Throws TooClose when |r - s| < 10 lambda.
    CMat3 green(const Vec3 &r, const Vec3 &s, const PhysicalConstants &k);

    // Scalar factor g and unit direction of G = g (I - p p^T), without the
    // distance check. Used by the assembly kernels.
    struct GreenTerm
    {
        cdouble g;
        Vec3 phat;
    };
    GreenTerm green_term(const Vec3 &r, const Vec3 &s, const PhysicalConstants &k);

    Vec3 wave_vector(double theta, double phi, const PhysicalConstants &k);

    // Gauss-Legendre in cos(theta) times a uniform trapezoid in phi. With
    // scaling enabled both counts grow linearly in max(1, extent / lambda).
    struct AngularQuadSpec
    {
        int n_theta = 64;
        int n_phi = 128;
        bool scale_with_extent = true;
        int min_nodes = 16;
        double min_nodes_per_wavelength = 8.0;

        int theta_nodes(double extent_wl) const;
        int phi_nodes(double extent_wl) const;
        // Throws QuadratureUnderresolved when either count is below
        // min_nodes + ceil(min_nodes_per_wavelength * extent_wl).
        void check(double extent_wl) const;
    };

    // Interference power per steradian as a function of (theta, phi). An
    // empty function selects the isotropic density 1 / (4 pi).
    using AngularDensity = std::function<double(double, double)>;

    CMat3 emi_autocorrelation(const Vec3 &dr, double sigma_emi2, const PhysicalConstants &k,
                              const AngularQuadSpec &quad, const AngularDensity &density = {});
}
