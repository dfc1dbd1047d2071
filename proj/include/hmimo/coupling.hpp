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

#include <cstddef>

#include "hmimo/em_fields.hpp"
#include "hmimo/geometry.hpp"
#include "hmimo/wavenumber_basis.hpp"

namespace hmimo
{
    // Tensor-product Gauss-Legendre over both apertures, one panel per
    // wavelength (rounded up) per axis and nodes_per_wavelength nodes per panel.
    struct QuadratureSpec
    {
        int nodes_per_wavelength = 12;
        bool doubling_check = false;
        double doubling_tolerance = 1e-3;

        void validate() const;
        QuadratureSpec doubled() const;
    };

    struct UserGeometry
    {
        ApertureSpec spec;
        AlignedAperture aligned;

        static UserGeometry from(const ApertureSpec &spec, double lambda);
    };

    struct CouplingMatrix
    {
        std::size_t user = 0;
        CMatrix H;
        ModeIndexSet rx_modes;
        ModeIndexSet tx_modes;

        CMat3 block(std::size_t j, std::size_t i) const
        {
            return H.block<3, 3>(3 * static_cast<Eigen::Index>(j), 3 * static_cast<Eigen::Index>(i));
        }
    };

    // Single 3x3 coupling block between receive mode m and transmit mode n.
    CMat3 coupling_block(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes,
                         ModeIndex m, const ModeIndexSet &tx_modes, ModeIndex n, const PhysicalConstants &k,
                         const QuadratureSpec &q);

    // Full 3M x 3N matrix, OpenMP-parallel. The result does not depend on the
    // number of worker threads.
    CouplingMatrix assemble_coupling(const UserGeometry &user, const ApertureSpec &rx, const ModeIndexSet &rx_modes,
                                     const ModeIndexSet &tx_modes, const PhysicalConstants &k,
                                     const QuadratureSpec &q, std::size_t user_id = 0);

    CVector field_projection(const CouplingMatrix &coupling, const CVector &xi);

    namespace reference
    {
        // Serial block-by-block assembly; bit-identical to assemble_coupling.
        CouplingMatrix assemble_coupling(const UserGeometry &user, const ApertureSpec &rx,
                                         const ModeIndexSet &rx_modes, const ModeIndexSet &tx_modes,
                                         const PhysicalConstants &k, const QuadratureSpec &q,
                                         std::size_t user_id = 0);
    }
}
