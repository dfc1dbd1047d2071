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

#include "hmimo/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace hmimo
{
    int configure_threads_from_env()
    {
        const char *env = std::getenv("HMIMO_THREADS");
        if (env != nullptr)
        {
            try
            {
                int n = std::stoi(env);
                if (n > 0)
                    omp_set_num_threads(n);
            }
            catch (const std::exception &)
            {
            }
        }
        return omp_get_max_threads();
    }

    int max_threads() { return omp_get_max_threads(); }

    void set_threads(int n)
    {
        if (n > 0)
            omp_set_num_threads(n);
    }
}
