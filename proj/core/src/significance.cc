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
#include <stdexcept>

#include <fmt/format.h>

#include "parallel.h"

namespace bratscore {
namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85;

void MulHiLo(uint32_t a, uint32_t b, uint32_t *hi, uint32_t *lo) {
  const uint64_t product = static_cast<uint64_t>(a) * b;
  *hi = static_cast<uint32_t>(product >> 32);
  *lo = static_cast<uint32_t>(product);
}

}  // namespace

Philox4x32::Block Philox4x32::Generate(Block ctr, Key key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    uint32_t hi0, lo0, hi1, lo1;
    MulHiLo(kPhiloxM0, ctr[0], &hi0, &lo0);
    MulHiLo(kPhiloxM1, ctr[2], &hi1, &lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

RepetitionStream::RepetitionStream(uint64_t seed, uint64_t repetition)
    : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
      repetition_(repetition) {}

uint32_t RepetitionStream::Next() {
  if (used_ == 4) {
    buffer_ = Philox4x32::Generate(
        {static_cast<uint32_t>(repetition_),
         static_cast<uint32_t>(repetition_ >> 32),
         static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32)},
        key_);
    ++block_;
    used_ = 0;
  }
  return buffer_[used_++];
}

uint32_t RepetitionStream::Below(uint32_t bound) {
  // Lemire's multiply-shift with rejection.
  uint64_t m = static_cast<uint64_t>(Next()) * bound;
  auto low = static_cast<uint32_t>(m);
  if (low < bound) {
    const uint32_t threshold = static_cast<uint32_t>(-bound) % bound;
    while (low < threshold) {
      m = static_cast<uint64_t>(Next()) * bound;
      low = static_cast<uint32_t>(m);
    }
  }
  return static_cast<uint32_t>(m >> 32);
}

std::vector<uint32_t> ResampleIndices(uint64_t seed, uint64_t repetition,
                                      uint32_t note_count) {
  RepetitionStream stream(seed, repetition);
  std::vector<uint32_t> out(note_count);
  for (auto &index : out) index = stream.Below(note_count);
  return out;
}

PairedNoteCounts CollectPairedCounts(const CorpusScore &a,
                                     const CorpusScore &b) {
  if (a.per_document.size() != b.per_document.size()) {
    throw DataError("systems were scored on different gold corpora");
  }
  PairedNoteCounts notes;
  notes.a.reserve(a.per_document.size());
  notes.b.reserve(b.per_document.size());
  for (size_t i = 0; i < a.per_document.size(); ++i) {
    if (a.per_document[i].first != b.per_document[i].first) {
      throw DataError("systems were scored on different gold corpora");
    }
    notes.a.push_back(a.per_document[i].second.Total());
    notes.b.push_back(b.per_document[i].second.Total());
  }
  return notes;
}

BootstrapResult PairedBootstrap(const PairedNoteCounts &notes,
                                const BootstrapConfig &config) {
  if (config.repetitions < 1) {
    throw std::invalid_argument("bootstrap needs at least one repetition");
  }
  if (notes.a.empty() || notes.a.size() != notes.b.size()) {
    throw DataError("bootstrap needs a non-empty gold corpus");
  }
  const auto note_count = static_cast<uint32_t>(notes.a.size());

  Counts total_a, total_b;
  for (uint32_t i = 0; i < note_count; ++i) {
    total_a += notes.a[i];
    total_b += notes.b[i];
  }

  BootstrapResult result;
  result.f1_a = F1Score(total_a);
  result.f1_b = F1Score(total_b);
  result.observed_delta = result.f1_a - result.f1_b;
  result.repetitions = config.repetitions;
  result.seed = config.seed;
  result.alpha = config.alpha;

  std::vector<double> deltas(static_cast<size_t>(config.repetitions));
  internal::ParallelFor(
      deltas.size(), config.workers,
      [&](size_t rep) {
        RepetitionStream stream(config.seed, rep);
        Counts a, b;
        for (uint32_t k = 0; k < note_count; ++k) {
          const uint32_t i = stream.Below(note_count);
          a += notes.a[i];
          b += notes.b[i];
        }
        deltas[rep] = F1Score(a) - F1Score(b);
      },
      /*chunk=*/64);

  for (double d : deltas) {
    if (d <= 0) ++result.count_at_or_below_zero;
    if (d >= 0) ++result.count_at_or_above_zero;
  }
  const int64_t tail = 1 + std::min(result.count_at_or_below_zero,
                                    result.count_at_or_above_zero);
  result.p_numerator = 2 * tail;
  result.p_denominator = config.repetitions + 1;
  result.p_value = std::min(1.0, static_cast<double>(result.p_numerator) /
                                     static_cast<double>(result.p_denominator));
  result.significant = result.p_value < config.alpha;
  if (config.keep_deltas) result.deltas = std::move(deltas);
  return result;
}

BootstrapResult PairedBootstrap(const Corpus &gold, const Corpus &pred_a,
                                const Corpus &pred_b,
                                const AnnotationSchema &schema,
                                const BootstrapConfig &config) {
  if (gold.empty()) throw DataError("bootstrap needs a non-empty gold corpus");
  ScoreOptions options;
  options.workers = config.workers;
  const CorpusScore a = ScoreCorpus(gold, pred_a, schema, options);
  const CorpusScore b = ScoreCorpus(gold, pred_b, schema, options);
  return PairedBootstrap(CollectPairedCounts(a, b), config);
}

}  // namespace bratscore
