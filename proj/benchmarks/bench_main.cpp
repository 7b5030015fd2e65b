// Copyright 2026 The povmsparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "benchmark/benchmark.h"
#include "povmsparse/designs.hpp"
#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"
#include "povmsparse/rng.hpp"
#include "povmsparse/sparsify.hpp"
#include "povmsparse/uniform.hpp"

using namespace povmsparse;

static void BM_dist_norm(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    RngStream rng(1);
    const auto m = random_povm(d, 4 * d * d, rng);
    const auto delta = random_direction(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(dist_norm(m, delta));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.size()));
}
BENCHMARK(BM_dist_norm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_haar_unit_vector(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    RngStream rng(2);
    for (auto _ : state) benchmark::DoNotOptimize(haar_unit_vector(d, rng));
}
BENCHMARK(BM_haar_unit_vector)->Arg(2)->Arg(16);

static void BM_estimate_uniform_norm(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    RngStream rng(3);
    const auto delta = random_direction(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_uniform_norm(delta, 10000, rng));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_estimate_uniform_norm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_random_povm(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    RngStream rng(4);
    for (auto _ : state) benchmark::DoNotOptimize(random_povm(d, 16 * d * d, rng));
}
BENCHMARK(BM_random_povm)->Arg(2)->Arg(4)->Arg(8);

static void BM_sym_projector(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto t = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(sym_projector(d, t));
}
BENCHMARK(BM_sym_projector)->Args({2, 4})->Args({4, 3})->Args({8, 3});
BENCHMARK_MAIN();
