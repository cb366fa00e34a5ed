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

#include "bratscore/significance.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "bratscore/report.h"
#include "bratscore/schema.h"
#include "bratscore/status.h"
#include "bratscore/testkit.h"
#include "test_util.h"

namespace bratscore {
namespace {

using ::testing::ElementsAre;

// Known-answer vectors of the Random123 distribution for philox4x32-10.
TEST(PhiloxTest, KnownAnswers) {
  EXPECT_THAT(Philox4x32::Generate({0, 0, 0, 0}, {0, 0}),
              ElementsAre(0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u));
  EXPECT_THAT(Philox4x32::Generate(
                  {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                  {0xffffffffu, 0xffffffffu}),
              ElementsAre(0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu));
  EXPECT_THAT(Philox4x32::Generate(
                  {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                  {0xa4093822u, 0x299f31d0u}),
              ElementsAre(0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u));
}

TEST(RepetitionStreamTest, DependsOnlyOnSeedAndRepetition) {
  auto draw = [](uint64_t seed, uint64_t rep) {
    RepetitionStream s(seed, rep);
    std::vector<uint32_t> out;
    for (int i = 0; i < 10; ++i) out.push_back(s.Next());
    return out;
  };
  EXPECT_EQ(draw(7, 3), draw(7, 3));
  EXPECT_NE(draw(7, 3), draw(7, 4));
  EXPECT_NE(draw(7, 3), draw(8, 3));
  EXPECT_NE(draw(7, 3), draw(7, uint64_t{3} << 32));
}

TEST(RepetitionStreamTest, BelowIsInRangeAndRoughlyUniform) {
  RepetitionStream s(1, 0);
  constexpr uint32_t kBound = 10;
  constexpr int kDraws = 100000;
  std::vector<int> histogram(kBound);
  for (int i = 0; i < kDraws; ++i) {
    const uint32_t x = s.Below(kBound);
    ASSERT_LT(x, kBound);
    ++histogram[x];
  }
  double chi2 = 0;
  const double expected = double{kDraws} / kBound;
  for (int h : histogram) chi2 += (h - expected) * (h - expected) / expected;
  // 9 degrees of freedom; 27.9 is the 0.999 quantile.
  EXPECT_LT(chi2, 27.9);
  EXPECT_EQ(s.Below(1), 0u);
}

TEST(ResampleIndicesTest, Shape) {
  const auto a = ResampleIndices(5, 17, 50);
  EXPECT_EQ(a.size(), 50u);
  EXPECT_TRUE(std::all_of(a.begin(), a.end(), [](uint32_t i) { return i < 50; }));
  EXPECT_EQ(a, ResampleIndices(5, 17, 50));
  EXPECT_NE(a, ResampleIndices(5, 18, 50));
}

PairedNoteCounts PerfectVersusEmpty(int notes) {
  PairedNoteCounts counts;
  for (int i = 0; i < notes; ++i) {
    const int64_t slots = 1 + i % 4;
    counts.a.push_back({slots, 0, 0});
    counts.b.push_back({0, slots, 0});
  }
  return counts;
}

TEST(PairedBootstrapTest, PerfectVersusEmptyHasSmallestPValue) {
  BootstrapConfig config;
  config.keep_deltas = true;
  const BootstrapResult r = PairedBootstrap(PerfectVersusEmpty(20), config);
  EXPECT_EQ(r.repetitions, 10000);
  EXPECT_EQ(r.f1_a, 1.0);
  EXPECT_EQ(r.f1_b, 0.0);
  EXPECT_EQ(r.count_at_or_below_zero, 0);
  EXPECT_EQ(r.count_at_or_above_zero, 10000);
  EXPECT_EQ(r.p_numerator, 2);
  EXPECT_EQ(r.p_denominator, 10001);
  EXPECT_EQ(r.p_value, 2.0 / 10001.0);
  EXPECT_TRUE(r.significant);
  EXPECT_TRUE(std::all_of(r.deltas.begin(), r.deltas.end(),
                          [](double d) { return d == 1.0; }));
}

TEST(PairedBootstrapTest, IdenticalSystemsHavePValueOne) {
  PairedNoteCounts counts;
  for (int i = 0; i < 15; ++i) {
    counts.a.push_back({i % 3, i % 2, i % 5});
  }
  counts.b = counts.a;
  for (int64_t reps : {1, 10, 1000}) {
    BootstrapConfig config;
    config.repetitions = reps;
    const BootstrapResult r = PairedBootstrap(counts, config);
    EXPECT_EQ(r.observed_delta, 0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_FALSE(r.significant);
    EXPECT_EQ(r.count_at_or_below_zero, reps);
    EXPECT_EQ(r.count_at_or_above_zero, reps);
  }
}

TEST(PairedBootstrapTest, PValueMatchesRecountOfDeltas) {
  PairedNoteCounts counts;
  for (int i = 0; i < 40; ++i) {
    counts.a.push_back({3 + i % 2, 1 + i % 3, i % 2});
    counts.b.push_back({3 + i % 3, 1 + i % 2, i % 3});
  }
  BootstrapConfig config;
  config.repetitions = 3000;
  config.keep_deltas = true;
  const BootstrapResult r = PairedBootstrap(counts, config);
  ASSERT_EQ(r.deltas.size(), 3000u);
  const int64_t le = std::count_if(r.deltas.begin(), r.deltas.end(),
                                   [](double d) { return d <= 0; });
  const int64_t ge = std::count_if(r.deltas.begin(), r.deltas.end(),
                                   [](double d) { return d >= 0; });
  EXPECT_EQ(r.count_at_or_below_zero, le);
  EXPECT_EQ(r.count_at_or_above_zero, ge);
  EXPECT_EQ(r.p_numerator, 2 * std::min(1 + le, 1 + ge));
  EXPECT_EQ(r.p_denominator, 3001);
  EXPECT_EQ(r.p_value,
            std::min(1.0, static_cast<double>(r.p_numerator) / 3001.0));
  EXPECT_EQ(r.significant, r.p_value < config.alpha);
}

TEST(PairedBootstrapTest, WorkerCountDoesNotChangeAnything) {
  PairedNoteCounts counts;
  for (int i = 0; i < 101; ++i) {
    counts.a.push_back({i % 7, i % 3, i % 4});
    counts.b.push_back({i % 5, i % 4, i % 2});
  }
  BootstrapConfig config;
  config.repetitions = 2000;
  config.keep_deltas = true;
  std::string first;
  std::vector<double> first_deltas;
  for (int workers : {1, 2, 4, 8}) {
    config.workers = workers;
    const BootstrapResult r = PairedBootstrap(counts, config);
    std::ostringstream out;
    WriteBootstrapResult(out, r, ReportFormat::kStructured);
    if (workers == 1) {
      first = out.str();
      first_deltas = r.deltas;
    } else {
      EXPECT_EQ(out.str(), first) << workers;
      EXPECT_EQ(r.deltas, first_deltas) << workers;
    }
  }
}

TEST(PairedBootstrapTest, ResampleDeltasEqualDirectRescoring) {
  testkit::GeneratorConfig gen;
  gen.seed = 21;
  gen.note_count = 12;
  const Corpus gold = testkit::GenerateGold(gen, ShacSchema());
  testkit::PerturbationRates rates_a, rates_b;
  rates_a.subtype_flip = 0.2;
  rates_a.event_drop = 0.1;
  rates_b.trigger_relocate = 0.2;
  rates_b.span_widen = 0.3;
  rates_b.event_insert = 0.05;
  const Corpus pred_a = testkit::Perturb(gold, ShacSchema(), rates_a, 1).corpus;
  const Corpus pred_b = testkit::Perturb(gold, ShacSchema(), rates_b, 2).corpus;

  BootstrapConfig config;
  config.repetitions = 25;
  config.seed = 99;
  config.keep_deltas = true;
  const BootstrapResult r =
      PairedBootstrap(gold, pred_a, pred_b, ShacSchema(), config);

  std::vector<const Document *> notes;
  for (const auto &[id, doc] : gold.documents) notes.push_back(&doc);
  for (int64_t rep = 0; rep < config.repetitions; ++rep) {
    // Materialize the resample as a corpus of renamed copies.
    Corpus g, a, b;
    const auto picks = ResampleIndices(config.seed, rep, notes.size());
    for (size_t k = 0; k < picks.size(); ++k) {
      const std::string id = notes[picks[k]]->doc_id;
      const std::string copy = "copy" + std::to_string(k);
      Document gd = *notes[picks[k]];
      Document ad = *pred_a.Find(id);
      Document bd = *pred_b.Find(id);
      gd.doc_id = ad.doc_id = bd.doc_id = copy;
      g.Add(std::move(gd));
      a.Add(std::move(ad));
      b.Add(std::move(bd));
    }
    const double f1_a = ScoreCorpus(g, a, ShacSchema()).report.overall.f1;
    const double f1_b = ScoreCorpus(g, b, ShacSchema()).report.overall.f1;
    EXPECT_EQ(r.deltas[rep], f1_a - f1_b) << rep;
  }
}

TEST(PairedBootstrapTest, RejectsBadInput) {
  BootstrapConfig config;
  config.repetitions = 0;
  EXPECT_THROW(PairedBootstrap(PerfectVersusEmpty(3), config),
               std::invalid_argument);
  EXPECT_THROW(PairedBootstrap(PairedNoteCounts{}, BootstrapConfig{}),
               DataError);
  EXPECT_THROW(PairedBootstrap(Corpus{}, Corpus{}, Corpus{}, ShacSchema(),
                               BootstrapConfig{}),
               DataError);
}

TEST(PairedBootstrapTest, NotesWithoutGoldSlotsAreLegal) {
  PairedNoteCounts counts;
  counts.a = {{2, 0, 0}, {0, 0, 0}, {0, 0, 1}};
  counts.b = {{1, 1, 0}, {0, 0, 0}, {0, 0, 0}};
  BootstrapConfig config;
  config.repetitions = 200;
  EXPECT_NO_THROW(PairedBootstrap(counts, config));
}

TEST(CollectPairedCountsTest, UsesGoldOrder) {
  const Document n1 = test::Doc(test::kTwoDrugText, test::kTwoDrugAnnA, "n1");
  const Document n2 = test::Doc(test::kTwoDrugText, test::kTwoDrugAnnA, "n2");
  const Corpus gold = test::CorpusOf({n1, n2});
  const Corpus only_n2 = test::CorpusOf({n2});
  const PairedNoteCounts c =
      CollectPairedCounts(ScoreCorpus(gold, gold, ShacSchema()),
                          ScoreCorpus(gold, only_n2, ShacSchema()));
  ASSERT_EQ(c.a.size(), 2u);
  EXPECT_EQ(c.a[0], (Counts{6, 0, 0}));
  EXPECT_EQ(c.b[0], (Counts{0, 6, 0}));
  EXPECT_EQ(c.b[1], (Counts{6, 0, 0}));
}

}  // namespace
}  // namespace bratscore
