// Copyright 2026 The bratscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bratscore/significance.h"

namespace bratscore {
namespace {

PairedNoteCounts SyntheticCounts(int notes) {
  PairedNoteCounts counts;
  for (int i = 0; i < notes; ++i) {
    counts.a.push_back({10 + i % 3, i % 4, i % 5});
    counts.b.push_back({9 + i % 4, 1 + i % 3, i % 2});
  }
  return counts;
}

void BM_PairedBootstrap(benchmark::State &state) {
  const PairedNoteCounts counts =
      SyntheticCounts(static_cast<int>(state.range(0)));
  BootstrapConfig config;
  config.repetitions = 10000;
  config.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(PairedBootstrap(counts, config));
  }
}
BENCHMARK(BM_PairedBootstrap)
    ->ArgsProduct({{500, 5000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_Philox(benchmark::State &state) {
  Philox4x32::Block counter{};
  for (auto _ : state) {
    counter = Philox4x32::Generate(counter, {1, 2});
    benchmark::DoNotOptimize(counter);
  }
}
BENCHMARK(BM_Philox);

}  // namespace
}  // namespace bratscore
