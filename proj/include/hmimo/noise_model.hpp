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

#include "hmimo/em_fields.hpp"
#include "hmimo/wavenumber_basis.hpp"

namespace hmimo
{
    // Projected interference covariance of the receive modes (unit sigma^2).
    // Node counts follow AngularQuadSpec with the extent set by the receiver
    // diagonal. OpenMP-parallel over fixed chunks of polar rows, reduced in
    // chunk order, so results do not depend on the worker count.
    CMatrix emi_covariance(const ModeIndexSet &rx_modes, double R_x, double R_y, const PhysicalConstants &k,
                           const AngularQuadSpec &quad, const AngularDensity &density = {});

    struct NoiseCovariance
    {
        CMatrix R_z;
        CMatrix R_emi;
        double sigma_emi2 = 0.0;
        double n0_half = 0.0;
    };

    // R_z = sigma_emi2 * R_emi + n0_half * I. Throws NotPSD when R_emi has an
    // eigenvalue below -1e-10 times its spectral scale.
    NoiseCovariance noise_covariance(const CMatrix &R_emi, double sigma_emi2, double n0_half);

    namespace reference
    {
        // Single accumulator, nodes visited in order.
        CMatrix emi_covariance(const ModeIndexSet &rx_modes, double R_x, double R_y, const PhysicalConstants &k,
                               const AngularQuadSpec &quad, const AngularDensity &density = {});
    }
}
