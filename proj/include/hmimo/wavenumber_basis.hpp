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

#include "hmimo/geometry.hpp"
#include "hmimo/types.hpp"

namespace hmimo
{
    struct ModeIndex
    {
        int nx = 0;
        int ny = 0;
        bool operator==(const ModeIndex &) const = default;
    };

    // Truncated Fourier index set for an aperture of extent S_x x S_y.
    // Enumeration runs over n_x from -N_x to N_x with n_y varying fastest.
    struct ModeIndexSet
    {
        int N_x = 0;
        int N_y = 0;
        double S_x = 0.0;
        double S_y = 0.0;
        bool prune_evanescent = false;
        std::vector<ModeIndex> modes;

        std::size_t size() const { return modes.size(); }
        const ModeIndex &operator[](std::size_t i) const { return modes[i]; }
        // Sampling wavenumber (2 pi n_x / S_x, 2 pi n_y / S_y) of entry i.
        Vec2 wavenumber(std::size_t i) const;
        // Position of a mode in the enumeration, or -1.
        long find(ModeIndex m) const;
    };

    ModeIndexSet mode_set(double S_x, double S_y, double lambda, bool prune);

    // sin(u)/u with the removable point at zero.
    double sinc(double u);

    cdouble tx_basis_eval(ModeIndex n, const Vec2 &s_aligned, double S_x, double S_y);
    cdouble rx_basis_eval(ModeIndex m, const Vec2 &r, double R_x, double R_y);

    // Transform of the receive basis over the receiver centered at the origin.
    cdouble rx_basis_ft(ModeIndex m, const Vec2 &kappa, double R_x, double R_y);
    // The same quantity without the complex wrapper; it is real because the
    // receiver is centered at the origin.
    double rx_basis_ft_real(ModeIndex m, const Vec2 &kappa, double R_x, double R_y);

    // Transform of phi_n(U s) over the physical source aperture, taken with
    // respect to the world x-y coordinates of s.
    cdouble tx_basis_ft(ModeIndex n, const Vec2 &kappa, const AlignedAperture &ap);

    // Current density samples on an aligned-aperture midpoint grid of
    // n_x x n_y cells; samples are stored with the y index fastest.
    struct CurrentGrid
    {
        int n_x = 0;
        int n_y = 0;
        double S_x = 0.0;
        double S_y = 0.0;
        double s_x0 = 0.0;
        double s_y0 = 0.0;
        std::vector<CVec3> samples;

        Vec2 position(int i, int j) const;
        CVec3 &at(int i, int j) { return samples[static_cast<std::size_t>(i) * n_y + j]; }
        const CVec3 &at(int i, int j) const { return samples[static_cast<std::size_t>(i) * n_y + j]; }
        static CurrentGrid on(const AlignedAperture &ap, int n_x, int n_y);
    };

    // Coefficients xi_n = integral of j(s) conj(phi_n(s)) over the aperture.
    // Throws GridTooCoarse below 4 samples per shortest retained period.
    std::vector<CVec3> expand_current(const CurrentGrid &j, const ModeIndexSet &modes);

    CVec3 reconstruct_current(const std::vector<CVec3> &xi, const ModeIndexSet &modes, const Vec2 &s_aligned);

    // Stack per-mode 3-vectors into a 3N vector and back.
    CVector flatten(const std::vector<CVec3> &xi);
    std::vector<CVec3> unflatten(const CVector &v);
}
