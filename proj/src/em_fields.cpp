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

#include "hmimo/em_fields.hpp"
#include "hmimo/quadrature.hpp"

#include <cmath>

namespace hmimo
{
    PhysicalConstants PhysicalConstants::at(double frequency_hz)
    {
        if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz))
            throw Error(Errc::BadFrequency, "frequency must be positive and finite");
        PhysicalConstants k;
        k.frequency = frequency_hz;
        k.lambda = c / frequency_hz;
        k.kappa0 = 2.0 * std::numbers::pi / k.lambda;
        k.omega = 2.0 * std::numbers::pi * frequency_hz;
        return k;
    }

    GreenTerm green_term(const Vec3 &r, const Vec3 &s, const PhysicalConstants &k)
    {
        const Vec3 p = r - s;
        const double d = p.norm();
        const cdouble phase = std::polar(1.0, -k.kappa0 * d);
        return {cdouble(0.0, -PhysicalConstants::eta / (2.0 * k.lambda * d)) * phase, p / d};
    }

    CMat3 green(const Vec3 &r, const Vec3 &s, const PhysicalConstants &k)
    {
        if ((r - s).norm() < 10.0 * k.lambda)
            throw Error(Errc::TooClose, "Green's function evaluated inside 10 wavelengths");
        const GreenTerm t = green_term(r, s, k);
        const Mat3 proj = Mat3::Identity() - t.phat * t.phat.transpose();
        return t.g * proj.cast<cdouble>();
    }

    Vec3 wave_vector(double theta, double phi, const PhysicalConstants &k)
    {
        return k.kappa0 * Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    }

    int AngularQuadSpec::theta_nodes(double extent_wl) const
    {
        return scale_with_extent ? static_cast<int>(std::ceil(n_theta * std::max(1.0, extent_wl))) : n_theta;
    }

    int AngularQuadSpec::phi_nodes(double extent_wl) const
    {
        return scale_with_extent ? static_cast<int>(std::ceil(n_phi * std::max(1.0, extent_wl))) : n_phi;
    }

    void AngularQuadSpec::check(double extent_wl) const
    {
        const int need = min_nodes + static_cast<int>(std::ceil(min_nodes_per_wavelength * extent_wl));
        if (theta_nodes(extent_wl) < need || phi_nodes(extent_wl) < need)
            throw Error(Errc::QuadratureUnderresolved,
                        "angular rule needs at least " + std::to_string(need) + " nodes per axis");
    }

    CMat3 emi_autocorrelation(const Vec3 &dr, double sigma_emi2, const PhysicalConstants &k,
                              const AngularQuadSpec &quad, const AngularDensity &density)
    {
        const double ext = dr.norm() / k.lambda;
        quad.check(ext);
        const Rule1D u = gauss_legendre(quad.theta_nodes(ext), -1.0, 1.0);
        const int np = quad.phi_nodes(ext);
        const double wphi = 2.0 * std::numbers::pi / np;

        Eigen::Matrix3d re = Eigen::Matrix3d::Zero(), im = Eigen::Matrix3d::Zero();
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            const double ct = u.x[i], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            const double theta = std::acos(ct);
            for (int j = 0; j < np; ++j)
            {
                const double phi = -std::numbers::pi + j * wphi;
                const Vec3 kh(st * std::cos(phi), st * std::sin(phi), ct);
                const double f = density ? density(theta, phi) : 1.0 / (4.0 * std::numbers::pi);
                const double w = u.w[i] * wphi * f;
                const double ph = k.kappa0 * kh.dot(dr);
                const Mat3 proj = Mat3::Identity() - kh * kh.transpose();
                re += (w * std::cos(ph)) * proj;
                im += (w * std::sin(ph)) * proj;
            }
        }
        CMat3 out;
        out.real() = sigma_emi2 * re;
        out.imag() = sigma_emi2 * im;
        return out;
    }
}
