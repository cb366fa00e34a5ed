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

// Synthetic corpora and brute-force oracles for tests and fixtures.
//
// Generated notes are made of one line per event,
//
//   "<lead> <trigger> with <arg>, <arg>, ... ."
//
// interleaved with filler lines that carry no annotations. Triggers get at
// least five characters of unannotated text on either side, so a trigger
// shifted by up to four characters still overlaps only its own original.
// Filler words far from every annotation are where the perturber puts
// relocated triggers and hallucinated events.
//
// All randomness goes through Rng (SplitMix64-seeded xoshiro256**), whose
// output is fully specified, so a seed reproduces byte-identical corpora on
// every platform.

#ifndef BRATSCORE_TESTKIT_H_
#define BRATSCORE_TESTKIT_H_

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/standoff.h"

namespace bratscore::testkit {

class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t Next();
  // Uniform in [0, bound); bound > 0.
  uint64_t Below(uint64_t bound);
  // Uniform in [lo, hi].
  int64_t Between(int64_t lo, int64_t hi);
  // Uniform in [0, 1) with 53 bits.
  double Uniform();
  bool Bernoulli(double p) { return p > 0 && Uniform() < p; }
  // Index drawn proportionally to non-negative weights with positive sum.
  size_t Categorical(std::span<const double> weights);

  template <typename T>
  const T &Pick(const std::vector<T> &items) {
    return items[Below(items.size())];
  }

 private:
  std::array<uint64_t, 4> state_;
};

// Each rate is the independent probability of applying the edit to one
// event (trigger_shift, trigger_relocate, event_drop), one argument
// (span_widen, span_shrink, subtype_flip), or one free filler word
// (event_insert).
struct PerturbationRates {
  double trigger_shift = 0;     // still overlapping the original trigger
  double trigger_relocate = 0;  // moved onto unannotated filler text
  double span_widen = 0;        // last fragment end + 1
  double span_shrink = 0;       // last fragment end - 1
  double subtype_flip = 0;      // another subtype from the vocabulary
  double event_drop = 0;
  double event_insert = 0;

  bool AllZero() const;
};

struct PartitionSpec {
  DocumentMetadata metadata;
  int notes = 0;
};

struct GeneratorConfig {
  uint64_t seed = 1;
  // Used when `partitions` is empty; such notes get default metadata.
  int note_count = 20;
  std::vector<PartitionSpec> partitions;

  // P(k events of a type in a note) for k = 0, 1, 2, ...
  std::vector<double> density = {0.35, 0.35, 0.2, 0.1};
  std::map<std::string, std::vector<double>> density_by_type;

  // Argument type -> subtype -> probability. Missing argument types draw
  // uniformly from their vocabulary.
  std::map<std::string, std::map<std::string, double>> subtype_distribution;

  double optional_argument_rate = 0.5;
  double discontinuous_rate = 0.15;
  int filler_lines = 3;

  PerturbationRates perturbation;

  // Throws std::invalid_argument for rates outside [0, 1], distributions not
  // summing to 1, and subtype distributions that cannot produce a subtype of
  // the schema's vocabulary.
  void Validate(const AnnotationSchema &schema) const;
};

// JSON with the same field names as GeneratorConfig, e.g.
//   {"seed": 7, "partitions": [{"source": "uw", "split": "train",
//    "notes": 10}], "perturbation": {"subtype_flip": 0.2}}
GeneratorConfig ParseGeneratorConfig(std::string_view json_text);

// Schema-valid corpus: ValidateDocument reports nothing for any note.
// Doc ids are "<source>/<split>/note<NNNN>" so the metadata survives a write
// and reload through LoadCorpus.
Corpus GenerateGold(const GeneratorConfig &config,
                    const AnnotationSchema &schema);

enum class EditKind {
  kTriggerShift,
  kTriggerRelocate,
  kSpanWiden,
  kSpanShrink,
  kSubtypeFlip,
  kEventDrop,
  kEventInsert,
};

std::string_view EditKindName(EditKind kind);

struct Edit {
  std::string doc_id;
  EditKind kind = EditKind::kTriggerShift;
  std::string event_id;  // gold id, or the new id for inserts
  int argument_index = -1;
  std::string detail;
};

struct PerturbResult {
  Corpus corpus;
  std::vector<Edit> edits;
};

// Applies the rates to a copy of `gold`. Surviving events keep their ids.
// With every rate at zero the output equals the input.
PerturbResult Perturb(const Corpus &gold, const AnnotationSchema &schema,
                      const PerturbationRates &rates, uint64_t seed);

// Counts implied by the edit log alone, without aligning anything. Equals
// ScoreCorpus(gold, perturbed) on corpora from GenerateGold.
ScoreCounts ExpectedCounts(const Corpus &gold, const PerturbResult &perturbed,
                           const AnnotationSchema &schema);

// Maximum-cardinality one-to-one event matching under trigger equivalence,
// by exhaustive dynamic programming over subsets. Throws
// std::invalid_argument above 12 events of one type in either document.
size_t OracleAlign(const Document &gold, const Document &pred);

inline constexpr int kOracleMaxEventsPerType = 12;

// A trigger-only document pair over a blank note: per event type, gold
// triggers are disjoint and predictions are jittered copies plus strays, at
// most `max_events_per_type` each.
std::pair<Document, Document> RandomAlignmentInstance(
    Rng &rng, const AnnotationSchema &schema, int max_events_per_type,
    const std::string &doc_id);

}  // namespace bratscore::testkit

#endif  // BRATSCORE_TESTKIT_H_
