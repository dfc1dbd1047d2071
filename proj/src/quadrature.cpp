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

#include "hmimo/quadrature.hpp"
#include "hmimo/types.hpp"

#include <algorithm>
#include <cmath>

#include <gsl/gsl_integration.h>

namespace hmimo
{
    namespace
    {
        // P_n(x) and P_n'(x) by the three-term recurrence.
        void legendre(int n, double x, double &p, double &dp)
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            p = n == 0 ? 1.0 : p1;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }

        // GSL tabulates orders up to 100 exactly and solves for larger orders
        // to about 1e-10; Newton steps restore full precision there.
        constexpr int tabulated_orders = 100;
    }

    Rule1D gauss_legendre(int n, double a, double b)
    {
        if (n < 1)
            throw Error(Errc::ValidationError, "Gauss-Legendre order must be positive");
        gsl_integration_glfixed_table *t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
        if (t == nullptr)
            throw Error(Errc::ValidationError, "Gauss-Legendre table allocation failed");
        Rule1D r;
        r.x.resize(n);
        r.w.resize(n);
        for (int i = 0; i < n; ++i)
            gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &r.x[i], &r.w[i], t);
        gsl_integration_glfixed_table_free(t);
        if (n > tabulated_orders)
            for (int i = 0; i < n; ++i)
            {
                double x = r.x[i], p = 0.0, dp = 0.0;
                for (int it = 0; it < 3; ++it)
                {
                    legendre(n, x, p, dp);
                    x -= p / dp;
                }
                legendre(n, x, p, dp);
                r.x[i] = x;
                r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
            }
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < n; ++i)
        {
            r.x[i] = mid + half * r.x[i];
            r.w[i] *= half;
        }

        // GSL enumerates from the center outwards; sort ascending.
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int p, int q) { return r.x[p] < r.x[q]; });
        Rule1D s;
        s.x.resize(n);
        s.w.resize(n);
        for (int i = 0; i < n; ++i)
        {
            s.x[i] = r.x[idx[i]];
            s.w[i] = r.w[idx[i]];
        }
        return s;
    }

    Rule1D composite_gauss_legendre(int panels, int order, double a, double b)
    {
        if (panels < 1)
            throw Error(Errc::ValidationError, "panel count must be positive");
        Rule1D out;
        out.x.reserve(static_cast<size_t>(panels) * order);
        out.w.reserve(static_cast<size_t>(panels) * order);
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p)
        {
            Rule1D g = gauss_legendre(order, a + p * h, a + (p + 1) * h);
            out.x.insert(out.x.end(), g.x.begin(), g.x.end());
            out.w.insert(out.w.end(), g.w.begin(), g.w.end());
        }
        return out;
    }

    Rule1D midpoint(int n, double a, double b)
    {
        if (n < 1)
            throw Error(Errc::GridTooCoarse, "midpoint rule needs at least one node");
        Rule1D r;
        r.x.resize(n);
        r.w.assign(n, (b - a) / n);
        for (int i = 0; i < n; ++i)
            r.x[i] = a + (i + 0.5) * (b - a) / n;
        return r;
    }
}
