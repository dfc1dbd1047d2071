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

#include <benchmark/benchmark.h>

#include "hmimo/benchmarks.hpp"
#include "hmimo/coupling.hpp"
#include "hmimo/noise_model.hpp"
#include "hmimo/parallel.hpp"

using namespace hmimo;

namespace
{
    const PhysicalConstants k10 = PhysicalConstants::at(10e9);

    ApertureSpec receiver(double side)
    {
        ApertureSpec a;
        a.length_h = a.length_v = side;
        return a;
    }

    UserGeometry user(double side)
    {
        ApertureSpec a;
        const double alpha = 0.4;
        a.center = 75.0 * Vec3(std::cos(alpha), 0, std::sin(alpha));
        a.length_h = a.length_v = side;
        a.pitch = std::atan2(-std::cos(alpha), -std::sin(alpha));
        return UserGeometry::from(a, k10.lambda);
    }

    // Argument 0 is the worker count, 1 the nodes per wavelength.
    void BM_assemble_coupling(benchmark::State &state)
    {
        set_threads(static_cast<int>(state.range(0)));
        const UserGeometry u = user(2 * k10.lambda);
        const ApertureSpec rx = receiver(4 * k10.lambda);
        const ModeIndexSet rm = mode_set(rx.length_h, rx.length_v, k10.lambda, false);
        const ModeIndexSet tm = mode_set(u.aligned.S_x, u.aligned.S_y, k10.lambda, false);
        QuadratureSpec q;
        q.nodes_per_wavelength = static_cast<int>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(assemble_coupling(u, rx, rm, tm, k10, q).H.data());
    }
    BENCHMARK(BM_assemble_coupling)->Args({1, 6})->Args({2, 6})->Args({4, 6})->Unit(benchmark::kMillisecond);

    void BM_assemble_coupling_serial_reference(benchmark::State &state)
    {
        const UserGeometry u = user(2 * k10.lambda);
        const ApertureSpec rx = receiver(4 * k10.lambda);
        const ModeIndexSet rm = mode_set(rx.length_h, rx.length_v, k10.lambda, false);
        const ModeIndexSet tm = mode_set(u.aligned.S_x, u.aligned.S_y, k10.lambda, false);
        QuadratureSpec q;
        q.nodes_per_wavelength = 6;
        for (auto _ : state)
            benchmark::DoNotOptimize(reference::assemble_coupling(u, rx, rm, tm, k10, q).H.data());
    }
    BENCHMARK(BM_assemble_coupling_serial_reference)->Unit(benchmark::kMillisecond);

    void BM_emi_covariance(benchmark::State &state)
    {
        set_threads(static_cast<int>(state.range(0)));
        const double R = 4 * k10.lambda;
        const ModeIndexSet rm = mode_set(R, R, k10.lambda, false);
        for (auto _ : state)
            benchmark::DoNotOptimize(emi_covariance(rm, R, R, k10, {}).data());
    }
    BENCHMARK(BM_emi_covariance)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

    void BM_emi_covariance_serial_reference(benchmark::State &state)
    {
        const double R = 4 * k10.lambda;
        const ModeIndexSet rm = mode_set(R, R, k10.lambda, false);
        for (auto _ : state)
            benchmark::DoNotOptimize(reference::emi_covariance(rm, R, R, k10, {}).data());
    }
    BENCHMARK(BM_emi_covariance_serial_reference)->Unit(benchmark::kMillisecond);

    void BM_discrete_noise(benchmark::State &state)
    {
        set_threads(static_cast<int>(state.range(0)));
        const std::vector<Vec3> pos = element_positions(receiver(4 * k10.lambda), {8, 8});
        for (auto _ : state)
            benchmark::DoNotOptimize(discrete_noise_covariance(pos, 1.0, 1.0, k10, {}).data());
    }
    BENCHMARK(BM_discrete_noise)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

    void BM_discrete_noise_pairwise_reference(benchmark::State &state)
    {
        const std::vector<Vec3> pos = element_positions(receiver(2 * k10.lambda), {4, 4});
        for (auto _ : state)
            benchmark::DoNotOptimize(reference::discrete_noise_covariance(pos, 1.0, 1.0, k10, {}).data());
    }
    BENCHMARK(BM_discrete_noise_pairwise_reference)->Unit(benchmark::kMillisecond);
}

BENCHMARK_MAIN();
