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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hmimo
{
    using cdouble = std::complex<double>;
    using Vec2 = Eigen::Vector2d;
    using Vec3 = Eigen::Vector3d;
    using Mat3 = Eigen::Matrix3d;
    using CVec3 = Eigen::Vector3cd;
    using CMat3 = Eigen::Matrix3cd;
    using CMatrix = Eigen::MatrixXcd;
    using CVector = Eigen::VectorXcd;
    using RVector = Eigen::VectorXd;

    enum class Errc
    {
        NonPositiveAperture,
        TooClose,
        BadNoiseDensity,
        HalfSpaceViolation,
        NoUsers,
        BadFrequency,
        BadReceiver,
        NegativePower,
        DegenerateProjection,
        QuadratureUnderresolved,
        GridTooCoarse,
        DimensionMismatch,
        NotPSD,
        NotPD,
        SingularNoise,
        ParseError,
        ValidationError,
        EmptyInput,
        CacheError,
        IoError
    };

    const char *errc_name(Errc e);

    // Every failure raised by the library carries one of the named classes above.
    class Error : public std::runtime_error
    {
    public:
        Error(Errc code, const std::string &message);
        Errc code() const noexcept { return code_; }
        const char *name() const noexcept { return errc_name(code_); }

    private:
        Errc code_;
    };
}
