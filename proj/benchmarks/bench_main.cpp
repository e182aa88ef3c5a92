// SPDX-License-Identifier: Apache-2.0
//
// sosf - statistics of second order scattering fading channels
// Copyright (C) 2026 The sosf authors
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

#include "sosf/capacity.hpp"
#include "sosf/montecarlo.hpp"
#include "sosf/specfun.hpp"
#include "sosf/stats.hpp"

#include <benchmark/benchmark.h>

namespace
{
    const sosf::ChannelSpec kSosf(sosf::SosfParams(0.3, 0.3), 10.0);
    const sosf::ChannelSpec kDrlos(sosf::SosfParams(0.4, 0.6), 10.0);

    void BM_MarcumQ1(benchmark::State &state)
    {
        double b = 0.5;
        for (auto _ : state) {
            benchmark::DoNotOptimize(sosf::specfun::marcum_q1(3.0, b));
            b = b > 8.0 ? 0.5 : b + 0.37;
        }
    }
    BENCHMARK(BM_MarcumQ1);

    void BM_GenIncGamma(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::specfun::gen_inc_gamma_scaled(0, 1.3, 0.7));
    }
    BENCHMARK(BM_GenIncGamma);

    void BM_PdfMixture(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::pdf(kSosf, 4.0));
    }
    BENCHMARK(BM_PdfMixture);

    void BM_CdfMixture(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::cdf(kSosf, 4.0));
    }
    BENCHMARK(BM_CdfMixture);

    void BM_CdfClosedDrlos(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::cdf(kDrlos, 4.0));
    }
    BENCHMARK(BM_CdfClosedDrlos);

    void BM_PdfLegacy(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::pdf_legacy(kSosf, 4.0));
    }
    BENCHMARK(BM_PdfLegacy)->Unit(benchmark::kMillisecond);

    void BM_CapacityLoss(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::capacity_loss(kSosf).t_bits);
    }
    BENCHMARK(BM_CapacityLoss);

    void BM_CapacityExact(benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::capacity_exact(kSosf).bits_per_use);
    }
    BENCHMARK(BM_CapacityExact)->Unit(benchmark::kMillisecond);

    void BM_SampleSnr(benchmark::State &state)
    {
        sosf::mc::McConfig cfg;
        cfg.n_samples = state.range(0);
        cfg.method = static_cast<sosf::mc::Method>(state.range(1));
        for (auto _ : state)
            benchmark::DoNotOptimize(sosf::mc::sample_snr(kSosf, cfg).data());
        state.SetItemsProcessed(state.iterations() * state.range(0));
    }
    BENCHMARK(BM_SampleSnr)->Args({1 << 18, 0})->Args({1 << 18, 1})->Unit(benchmark::kMillisecond);
} // namespace
BENCHMARK_MAIN();
