// SPDX-License-Identifier: Apache-2.0
//
// cbf-toolkit: complementary beam pairs for omni-directional broadcast
// Copyright (C) 2026 The cbf-toolkit Authors
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

#include "cbf/array.hpp"
#include "cbf/codebook.hpp"
#include "cbf/linksim.hpp"
#include "cbf/pattern.hpp"

#include <benchmark/benchmark.h>

using namespace cbf;

static void BM_EvaluatePattern(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto geom = ArrayGeometry::ula(n);
    const auto grid = AngularGrid::azimuth(4096);
    const auto w = golay_construct(n).vectors[0];
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_pattern(w, geom, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_EvaluatePattern)->Arg(8)->Arg(16)->Arg(64);

static void BM_EvaluatePlanar(benchmark::State &state)
{
    const auto geom = ArrayGeometry::upa(4, 4);
    const auto grid = AngularGrid::planar();
    const auto w = golay_construct(geom).vectors[0];
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_pattern(w, geom, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_EvaluatePlanar)->Unit(benchmark::kMillisecond);

static void BM_ExhaustiveSearch(benchmark::State &state)
{
    const auto geom = ArrayGeometry::ula(static_cast<std::size_t>(state.range(0)));
    SearchConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(search_complementary(geom, cfg));
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_RandomizedSearch(benchmark::State &state)
{
    const auto geom = ArrayGeometry::ula(16);
    SearchConfig cfg;
    cfg.mode = SearchMode::Randomized;
    cfg.K = 4;
    cfg.budget = 2000;
    for (auto _ : state)
        benchmark::DoNotOptimize(search_complementary(geom, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.budget));
}
BENCHMARK(BM_RandomizedSearch)->Unit(benchmark::kMillisecond);

static void BM_RunBer(benchmark::State &state)
{
    SimConfig cfg;
    cfg.scheme = static_cast<Scheme>(state.range(0));
    cfg.channel = Channel::RayleighBlockFlat;
    cfg.snr_db_list = {6.0};
    cfg.total_bits = 1'000'000;
    cfg.early_stop = false;
    cfg.threads = 1;
    if (cfg.scheme == Scheme::CBF_Digital || cfg.scheme == Scheme::CBF_Analog)
        cfg.codebook = golay_construct(8);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_ber(cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.total_bits));
}
BENCHMARK(BM_RunBer)
    ->Arg(static_cast<int>(Scheme::SingleAntenna))
    ->Arg(static_cast<int>(Scheme::RBF))
    ->Arg(static_cast<int>(Scheme::CBF_Digital))
    ->Arg(static_cast<int>(Scheme::CBF_Analog))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
