// Copyright 2026 The qghz Authors
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

#include <benchmark/benchmark.h>

#include "qghz/gates.hpp"
#include "qghz/ghz_catalog.hpp"
#include "qghz/protocol.hpp"
#include "qghz/verify.hpp"

namespace {

using namespace qghz;

GhzLabel first_label(const SystemShape& shape) {
  return GhzLabel{Levels(static_cast<std::size_t>(shape.photons() - 1), 1), 1};
}

// Full gate sequence in one representation: path control on every photon,
// then a QFT on every spatial qudit.
void BM_GatePipeline(benchmark::State& state, Representation rep) {
  const SystemShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto initial = convert_representation(hyper_initial(shape, first_label(shape)), rep);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_qft_spatial_all(apply_path_control_all(initial)));
  }
  state.SetLabel(to_string(rep));
}
BENCHMARK_CAPTURE(BM_GatePipeline, sparse, Representation::sparse)
    ->Args({3, 3})->Args({4, 3})->Args({5, 3})->Args({3, 4});
BENCHMARK_CAPTURE(BM_GatePipeline, dense, Representation::dense)
    ->Args({3, 3})->Args({4, 3})->Args({5, 3})->Args({3, 4});

void BM_SpatialQft(benchmark::State& state) {
  const SystemShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto s = ghz_spatial(shape, first_label(shape));
  for (auto _ : state) benchmark::DoNotOptimize(apply_qft_spatial_all(s));
}
BENCHMARK(BM_SpatialQft)->Args({3, 3})->Args({8, 3})->Args({16, 3})->Args({4, 6});

void BM_RunExhaustive(benchmark::State& state) {
  const SystemShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto label = first_label(shape);
  for (auto _ : state) benchmark::DoNotOptimize(run_exhaustive(shape, label));
}
BENCHMARK(BM_RunExhaustive)->Args({3, 3})->Args({5, 3})->Args({4, 5});

void BM_ShotSampler(benchmark::State& state) {
  const SystemShape shape(3, 3);
  ShotSampler sampler(shape, first_label(shape));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.shot(rng));
}
BENCHMARK(BM_ShotSampler);

void BM_VerifyShape(benchmark::State& state) {
  const SystemShape shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_shape(shape));
}
BENCHMARK(BM_VerifyShape)->Args({3, 3})->Args({4, 3})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
