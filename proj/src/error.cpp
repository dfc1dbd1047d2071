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

#include "hmimo/types.hpp"

namespace hmimo
{
    const char *errc_name(Errc e)
    {
        switch (e)
        {
        case Errc::NonPositiveAperture: return "NonPositiveAperture";
        case Errc::TooClose: return "TooClose";
        case Errc::BadNoiseDensity: return "BadNoiseDensity";
        case Errc::HalfSpaceViolation: return "HalfSpaceViolation";
        case Errc::NoUsers: return "NoUsers";
        case Errc::BadFrequency: return "BadFrequency";
        case Errc::BadReceiver: return "BadReceiver";
        case Errc::NegativePower: return "NegativePower";
        case Errc::DegenerateProjection: return "DegenerateProjection";
        case Errc::QuadratureUnderresolved: return "QuadratureUnderresolved";
        case Errc::GridTooCoarse: return "GridTooCoarse";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotPSD: return "NotPSD";
        case Errc::NotPD: return "NotPD";
        case Errc::SingularNoise: return "SingularNoise";
        case Errc::ParseError: return "ParseError";
        case Errc::ValidationError: return "ValidationError";
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::CacheError: return "CacheError";
        case Errc::IoError: return "IoError";
        }
        return "Unknown";
    }

    Error::Error(Errc code, const std::string &message)
        : std::runtime_error(message), code_(code) {}
}
