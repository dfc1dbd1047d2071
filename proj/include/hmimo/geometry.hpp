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

#include <array>
#include <vector>

#include "hmimo/types.hpp"

namespace hmimo
{
    // Intrinsic z-y-x rotation: R = Rz(yaw) * Ry(pitch) * Rx(roll).
    Mat3 build_rotation(double yaw, double pitch, double roll);

    // Rectangular planar aperture. The local frame has the horizontal side
    // along x, the vertical side along y and the normal along z; the
    // orientation maps that frame to world coordinates.
    struct ApertureSpec
    {
        Vec3 center = Vec3::Zero();
        double length_v = 0.0;
        double length_h = 0.0;
        double yaw = 0.0;
        double pitch = 0.0;
        double roll = 0.0;

        Mat3 rotation() const { return build_rotation(yaw, pitch, roll); }
        Vec3 axis_h() const { return rotation().col(0); }
        Vec3 axis_v() const { return rotation().col(1); }
        Vec3 normal() const { return rotation().col(2); }

        // Point at local offsets (a_h, a_v) from the center.
        Vec3 point(double a_h, double a_v) const;

        // Corners in the order (-h,-v), (+h,-v), (+h,+v), (-h,+v).
        std::array<Vec3, 4> corners() const;
    };

    // Aligned description: U rotates the aperture plane into z = s_z0 with
    // the rectangle spanning [s_x0, s_x0 + S_x] x [s_y0, s_y0 + S_y].
    struct AlignedAperture
    {
        Mat3 U = Mat3::Identity();
        double S_x = 0.0;
        double S_y = 0.0;
        double s_x0 = 0.0;
        double s_y0 = 0.0;
        double s_z0 = 0.0;
        int det_JU = 1;

        Vec3 to_world(double sx, double sy) const { return U.transpose() * Vec3(sx, sy, s_z0); }
        Vec3 to_aligned(const Vec3 &s) const { return U * s; }
    };

    AlignedAperture align_aperture(const ApertureSpec &a, double lambda);

    struct UserSpec
    {
        ApertureSpec aperture;
        double p_max = 0.0;
    };

    struct Scenario
    {
        double frequency = 10e9;
        ApertureSpec rx;
        std::vector<UserSpec> users;
        double sigma_emi2 = 5.6e-6;
        double n0_half = 5.6e-6;
    };

    // Exact minimum Euclidean distance between two rectangles.
    double min_distance(const ApertureSpec &a, const ApertureSpec &b);

    // Throws a named Error for the first violated invariant.
    void validate_scenario(const Scenario &s);
}
