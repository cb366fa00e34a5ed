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

#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/standoff.h"
#include "bratscore/testkit.h"

namespace bratscore {
namespace {

struct Fixture {
  Corpus gold;
  Corpus pred;
};

Fixture MakeFixture(int notes) {
  testkit::GeneratorConfig config;
  config.seed = 3;
  config.note_count = notes;
  testkit::PerturbationRates rates;
  rates.trigger_shift = 0.2;
  rates.span_widen = 0.1;
  rates.subtype_flip = 0.1;
  rates.event_drop = 0.05;
  rates.event_insert = 0.02;
  Fixture f;
  f.gold = testkit::GenerateGold(config, ShacSchema());
  f.pred = testkit::Perturb(f.gold, ShacSchema(), rates, 4).corpus;
  return f;
}

void BM_ScoreCorpus(benchmark::State &state) {
  const Fixture f = MakeFixture(static_cast<int>(state.range(0)));
  const ScoreOptions options{static_cast<int>(state.range(1))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreCorpus(f.gold, f.pred, ShacSchema(), options));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ScoreCorpus)
    ->ArgsProduct({{100, 1000}, {1, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_ParseSerialize(benchmark::State &state) {
  const Fixture f = MakeFixture(200);
  for (auto _ : state) {
    for (const auto &[id, doc] : f.gold.documents) {
      benchmark::DoNotOptimize(
          ParseDocument(SerializeDocument(doc), doc.text.utf8(), id));
    }
  }
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_ParseSerialize)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace bratscore
