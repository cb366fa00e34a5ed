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

// Note-level paired bootstrap test on overall F1.
//
// Each repetition draws N notes with replacement (N = gold note count),
// sums both systems' cached per-note counts over the draw and records
// delta_i = F1_A - F1_B. The two-sided p-value uses add-one smoothing:
//
//   p = min(1, 2 * min(1 + #{delta_i <= 0}, 1 + #{delta_i >= 0}) / (R + 1))
//
// Repetition i draws from a Philox4x32-10 stream keyed by the seed with
// counter (i, block), so any repetition can be computed independently and
// the result does not depend on the number of worker threads.

#ifndef BRATSCORE_SIGNIFICANCE_H_
#define BRATSCORE_SIGNIFICANCE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/standoff.h"

namespace bratscore {

// Philox4x32 with 10 rounds (Salmon et al., Random123).
class Philox4x32 {
 public:
  using Block = std::array<uint32_t, 4>;
  using Key = std::array<uint32_t, 2>;

  static Block Generate(Block counter, Key key);
};

// Stream of 32-bit words for one bootstrap repetition.
class RepetitionStream {
 public:
  RepetitionStream(uint64_t seed, uint64_t repetition);

  uint32_t Next();
  // Unbiased integer in [0, bound). Requires bound > 0.
  uint32_t Below(uint32_t bound);

 private:
  Philox4x32::Key key_;
  uint64_t repetition_;
  uint64_t block_ = 0;
  Philox4x32::Block buffer_{};
  int used_ = 4;
};

// Note indices drawn for repetition `repetition`.
std::vector<uint32_t> ResampleIndices(uint64_t seed, uint64_t repetition,
                                      uint32_t note_count);

struct BootstrapConfig {
  int64_t repetitions = 10000;
  uint64_t seed = 20220607;
  double alpha = 0.05;
  int workers = 1;
  // Keep every per-repetition delta in the result.
  bool keep_deltas = false;
};

struct BootstrapResult {
  double f1_a = 0;
  double f1_b = 0;
  double observed_delta = 0;
  // p = p_numerator / p_denominator before clamping; p_value is clamped.
  int64_t p_numerator = 0;
  int64_t p_denominator = 1;
  double p_value = 1;
  int64_t count_at_or_below_zero = 0;
  int64_t count_at_or_above_zero = 0;
  int64_t repetitions = 0;
  uint64_t seed = 0;
  double alpha = 0;
  bool significant = false;
  std::vector<double> deltas;
};

// Per-note overall counts for both systems, aligned with the gold corpus
// order. Exposed so callers can reuse a scoring pass.
struct PairedNoteCounts {
  std::vector<Counts> a;
  std::vector<Counts> b;
};

PairedNoteCounts CollectPairedCounts(const CorpusScore &a,
                                     const CorpusScore &b);

// Throws DataError for an empty note list and std::invalid_argument for
// repetitions < 1.
BootstrapResult PairedBootstrap(const PairedNoteCounts &notes,
                                const BootstrapConfig &config);

// Scores both prediction corpora once, then runs the bootstrap.
BootstrapResult PairedBootstrap(const Corpus &gold, const Corpus &pred_a,
                                const Corpus &pred_b,
                                const AnnotationSchema &schema,
                                const BootstrapConfig &config);

}  // namespace bratscore

#endif  // BRATSCORE_SIGNIFICANCE_H_
