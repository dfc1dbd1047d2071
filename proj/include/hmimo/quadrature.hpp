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

namespace hmimo
{
    struct Rule1D
    {
        std::vector<double> x;
        std::vector<double> w;
        std::size_t size() const { return x.size(); }
    };

    // n-point Gauss-Legendre rule on [a, b], nodes ascending.
    Rule1D gauss_legendre(int n, double a, double b);

    // Composite Gauss-Legendre: `panels` equal panels with `order` nodes each.
    Rule1D composite_gauss_legendre(int panels, int order, double a, double b);

    // n-point midpoint rule on [a, b].
    Rule1D midpoint(int n, double a, double b);
}
