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

#include "hmimo/geometry.hpp"
#include "hmimo/em_fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace hmimo
{
    namespace
    {
        Mat3 rot_x(double a)
        {
            const double c = std::cos(a), s = std::sin(a);
            Mat3 m;
            m << 1, 0, 0, 0, c, -s, 0, s, c;
            return m;
        }
        Mat3 rot_y(double a)
        {
            const double c = std::cos(a), s = std::sin(a);
            Mat3 m;
            m << c, 0, s, 0, 1, 0, -s, 0, c;
            return m;
        }
        Mat3 rot_z(double a)
        {
            const double c = std::cos(a), s = std::sin(a);
            Mat3 m;
            m << c, -s, 0, s, c, 0, 0, 0, 1;
            return m;
        }

        // Rodrigues rotation taking unit vector n onto +z by the shortest arc.
        Mat3 rotate_onto_z(const Vec3 &n)
        {
            const Vec3 z(0, 0, 1);
            const double c = n.dot(z);
            if (c > 1.0 - 1e-15)
                return Mat3::Identity();
            if (c < -1.0 + 1e-15)
                return rot_x(std::numbers::pi);
            const Vec3 v = n.cross(z);
            const double s = v.norm();
            Mat3 k;
            k << 0, -v(2), v(1), v(2), 0, -v(0), -v(1), v(0), 0;
            return Mat3::Identity() + k + k * k * ((1.0 - c) / (s * s));
        }

        double point_rect_distance(const Vec3 &p, const ApertureSpec &r)
        {
            const Mat3 R = r.rotation();
            const Vec3 d = R.transpose() * (p - r.center);
            const double u = std::clamp(d(0), -0.5 * r.length_h, 0.5 * r.length_h);
            const double v = std::clamp(d(1), -0.5 * r.length_v, 0.5 * r.length_v);
            return (d - Vec3(u, v, 0.0)).norm();
        }

        double segment_segment_distance(const Vec3 &p1, const Vec3 &q1, const Vec3 &p2, const Vec3 &q2)
        {
            const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
            const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
            double s = 0.0, t = 0.0;
            const double eps = 1e-300;
            if (a <= eps && e <= eps)
                return r.norm();
            if (a <= eps)
                t = std::clamp(f / e, 0.0, 1.0);
            else
            {
                const double c = d1.dot(r);
                if (e <= eps)
                    s = std::clamp(-c / a, 0.0, 1.0);
                else
                {
                    const double b = d1.dot(d2);
                    const double denom = a * e - b * b;
                    s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
                    t = (b * s + f) / e;
                    if (t < 0.0)
                    {
                        t = 0.0;
                        s = std::clamp(-c / a, 0.0, 1.0);
                    }
                    else if (t > 1.0)
                    {
                        t = 1.0;
                        s = std::clamp((b - c) / a, 0.0, 1.0);
                    }
                }
            }
            return ((p1 + s * d1) - (p2 + t * d2)).norm();
        }

        bool segment_pierces_rect(const Vec3 &p, const Vec3 &q, const ApertureSpec &r)
        {
            const Mat3 R = r.rotation();
            const Vec3 a = R.transpose() * (p - r.center);
            const Vec3 b = R.transpose() * (q - r.center);
            if ((a(2) > 0.0 && b(2) > 0.0) || (a(2) < 0.0 && b(2) < 0.0) || a(2) == b(2))
                return false;
            const double t = a(2) / (a(2) - b(2));
            const Vec3 x = a + t * (b - a);
            return std::abs(x(0)) <= 0.5 * r.length_h && std::abs(x(1)) <= 0.5 * r.length_v;
        }

        bool finite_spec(const ApertureSpec &a)
        {
            return a.center.allFinite() && std::isfinite(a.length_h) && std::isfinite(a.length_v) &&
                   std::isfinite(a.yaw) && std::isfinite(a.pitch) && std::isfinite(a.roll);
        }
    }

    Mat3 build_rotation(double yaw, double pitch, double roll)
    {
        return rot_z(yaw) * rot_y(pitch) * rot_x(roll);
    }

    Vec3 ApertureSpec::point(double a_h, double a_v) const
    {
        const Mat3 R = rotation();
        return center + a_h * R.col(0) + a_v * R.col(1);
    }

    std::array<Vec3, 4> ApertureSpec::corners() const
    {
        const double h = 0.5 * length_h, v = 0.5 * length_v;
        return {point(-h, -v), point(h, -v), point(h, v), point(-h, v)};
    }

    AlignedAperture align_aperture(const ApertureSpec &a, double lambda)
    {
        if (!(a.length_h > 0.0) || !(a.length_v > 0.0))
            throw Error(Errc::NonPositiveAperture, "aperture side lengths must be positive");
        if (!finite_spec(a))
            throw Error(Errc::ValidationError, "aperture parameters must be finite");

        const Mat3 R = a.rotation();
        Mat3 U = rotate_onto_z(R.col(2));

        // Remove the residual in-plane angle so the local h axis lands on a
        // coordinate axis, then flip it to the non-negative x side.
        const Vec3 h = U * R.col(0);
        const double beta = std::atan2(h(1), h(0));
        const double snapped = std::round(beta / (0.5 * std::numbers::pi)) * (0.5 * std::numbers::pi);
        U = rot_z(snapped - beta) * U;
        const Vec3 h2 = U * R.col(0);
        if (h2(0) < -1e-12)
            U = rot_z(std::numbers::pi) * U;

        AlignedAperture out;
        out.U = U;
        double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
        double ymin = xmin, ymax = -xmin, zsum = 0.0;
        for (const Vec3 &c : a.corners())
        {
            const Vec3 p = U * c;
            xmin = std::min(xmin, p(0));
            xmax = std::max(xmax, p(0));
            ymin = std::min(ymin, p(1));
            ymax = std::max(ymax, p(1));
            zsum += p(2);
        }
        out.S_x = xmax - xmin;
        out.S_y = ymax - ymin;
        out.s_x0 = xmin;
        out.s_y0 = ymin;
        out.s_z0 = 0.25 * zsum;
        out.det_JU = U.determinant() > 0.0 ? 1 : -1;
        if (std::min(out.S_x, out.S_y) < 1e-6 * lambda)
            throw Error(Errc::DegenerateProjection, "aligned aperture has a vanishing projection");
        return out;
    }

    double min_distance(const ApertureSpec &a, const ApertureSpec &b)
    {
        const auto ca = a.corners(), cb = b.corners();
        for (int i = 0; i < 4; ++i)
        {
            if (segment_pierces_rect(ca[i], ca[(i + 1) % 4], b) || segment_pierces_rect(cb[i], cb[(i + 1) % 4], a))
                return 0.0;
        }
        double d = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i)
        {
            d = std::min(d, point_rect_distance(ca[i], b));
            d = std::min(d, point_rect_distance(cb[i], a));
            for (int j = 0; j < 4; ++j)
                d = std::min(d, segment_segment_distance(ca[i], ca[(i + 1) % 4], cb[j], cb[(j + 1) % 4]));
        }
        return d;
    }

    void validate_scenario(const Scenario &s)
    {
        if (!(s.frequency > 0.0) || !std::isfinite(s.frequency))
            throw Error(Errc::BadFrequency, "frequency must be positive and finite");
        const PhysicalConstants k = PhysicalConstants::at(s.frequency);

        if (!(s.rx.length_h > 0.0) || !(s.rx.length_v > 0.0))
            throw Error(Errc::NonPositiveAperture, "receiver side lengths must be positive");
        if (!finite_spec(s.rx) || s.rx.center.norm() > 1e-12 ||
            (s.rx.rotation() - Mat3::Identity()).norm() > 1e-12)
            throw Error(Errc::BadReceiver, "receiver must be centered at the origin in the x-y plane");

        if (!(s.sigma_emi2 >= 0.0) || !std::isfinite(s.sigma_emi2))
            throw Error(Errc::BadNoiseDensity, "sigma_emi2 must be non-negative");
        if (!(s.n0_half > 0.0) || !std::isfinite(s.n0_half))
            throw Error(Errc::BadNoiseDensity, "n0_half must be positive");

        if (s.users.empty())
            throw Error(Errc::NoUsers, "scenario needs at least one user");

        for (std::size_t i = 0; i < s.users.size(); ++i)
        {
            const auto &u = s.users[i];
            const std::string tag = "user " + std::to_string(i);
            if (!(u.aperture.length_h > 0.0) || !(u.aperture.length_v > 0.0))
                throw Error(Errc::NonPositiveAperture, tag + ": side lengths must be positive");
            if (!finite_spec(u.aperture))
                throw Error(Errc::ValidationError, tag + ": non-finite aperture parameters");
            if (!(u.p_max >= 0.0) || !std::isfinite(u.p_max))
                throw Error(Errc::NegativePower, tag + ": power budget must be non-negative");
            bool above = true, below = true;
            for (const Vec3 &c : u.aperture.corners())
            {
                above = above && c(2) > 0.0;
                below = below && c(2) < 0.0;
            }
            if (!above && !below)
                throw Error(Errc::HalfSpaceViolation, tag + ": aperture crosses the receiver plane");
            const double d = min_distance(u.aperture, s.rx);
            if (!(d > 10.0 * k.lambda))
                throw Error(Errc::TooClose, tag + ": closer than 10 wavelengths to the receiver");
        }
    }
}
