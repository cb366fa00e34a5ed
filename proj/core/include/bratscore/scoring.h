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

// Slot-filling scoring of predicted events against gold events.
//
// Per note, events are aligned one-to-one on trigger equivalence (same event
// type, spans share at least one character). Arguments of aligned events are
// then compared per argument kind:
//
//   span-only  equal iff argument types match and fragment lists are equal
//   labeled    equal iff argument types and subtypes match; spans ignored
//
// Every argument of an unaligned gold event is a false negative and every
// argument of an unaligned predicted event is a false positive. Counts are
// kept per phenomenon key and micro-averaged on demand.

#ifndef BRATSCORE_SCORING_H_
#define BRATSCORE_SCORING_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "bratscore/schema.h"
#include "bratscore/standoff.h"

namespace bratscore {

// Subtype recorded for a labeled argument that has no subtype attribute. It
// never equals a configured subtype.
inline constexpr std::string_view kMissingSubtype = "<missing>";

enum class PhenomenonKind { kTrigger, kSpanOnlyArgument, kLabeledArgument };

std::string_view PhenomenonKindName(PhenomenonKind kind);

struct PhenomenonKey {
  PhenomenonKind kind = PhenomenonKind::kTrigger;
  std::string event_type;
  std::string argument_type;  // empty for triggers
  std::string subtype;        // labeled arguments only

  static PhenomenonKey Trigger(std::string event_type);
  static PhenomenonKey SpanOnly(std::string event_type,
                                std::string argument_type);
  static PhenomenonKey Labeled(std::string event_type,
                               std::string argument_type, std::string subtype);

  friend auto operator<=>(const PhenomenonKey &a, const PhenomenonKey &b) {
    return std::tie(a.event_type, a.kind, a.argument_type, a.subtype) <=>
           std::tie(b.event_type, b.kind, b.argument_type, b.subtype);
  }
  friend bool operator==(const PhenomenonKey &, const PhenomenonKey &) =
      default;
};

struct Counts {
  int64_t tp = 0;
  int64_t fn = 0;
  int64_t fp = 0;

  Counts &operator+=(const Counts &o) {
    tp += o.tp;
    fn += o.fn;
    fp += o.fp;
    return *this;
  }
  friend Counts operator+(Counts a, const Counts &b) { return a += b; }
  friend bool operator==(const Counts &, const Counts &) = default;
};

class ScoreCounts {
 public:
  using Map = std::map<PhenomenonKey, Counts>;

  void AddTp(const PhenomenonKey &key, int64_t n = 1) { counts_[key].tp += n; }
  void AddFn(const PhenomenonKey &key, int64_t n = 1) { counts_[key].fn += n; }
  void AddFp(const PhenomenonKey &key, int64_t n = 1) { counts_[key].fp += n; }

  ScoreCounts &operator+=(const ScoreCounts &other);
  friend ScoreCounts operator+(ScoreCounts a, const ScoreCounts &b) {
    return a += b;
  }

  const Map &by_key() const { return counts_; }
  Counts Get(const PhenomenonKey &key) const;
  Counts Total() const;
  bool empty() const { return counts_.empty(); }

  template <typename Pred>
  ScoreCounts Filter(Pred keep) const {
    ScoreCounts out;
    for (const auto &[key, c] : counts_) {
      if (keep(key)) out.counts_.emplace(key, c);
    }
    return out;
  }

  friend bool operator==(const ScoreCounts &, const ScoreCounts &) = default;

 private:
  Map counts_;
};

// Precision, recall and F1 with every 0/0 quotient defined as 0.
struct Metrics {
  Counts counts;
  double precision = 0;
  double recall = 0;
  double f1 = 0;

  static Metrics From(const Counts &c);
};

// 2tp / (2tp + fp + fn), the count form of 2PR/(P+R); 0 when tp = 0.
double F1Score(const Counts &c);

struct KeyMetrics {
  PhenomenonKey key;
  Metrics metrics;
};

// One rollup row. Unused name fields are empty.
struct RollupMetrics {
  std::string event_type;
  std::string argument_type;
  std::string subtype;
  Metrics metrics;
};

struct MetricReport {
  std::vector<KeyMetrics> per_key;
  // All keys of an event type, trigger included.
  std::vector<RollupMetrics> by_event_type;
  // Argument keys grouped by (event type, argument type).
  std::vector<RollupMetrics> by_argument_type;
  // Labeled keys grouped by (argument type, subtype) across event types.
  std::vector<RollupMetrics> by_subtype;
  // Sum over every key, triggers and arguments together.
  Metrics overall;
};

MetricReport ComputeMetricReport(const ScoreCounts &counts);

// Trigger equivalence: equal event types and at least one shared character.
bool TriggersEquivalent(std::string_view gold_type, const Span &gold_span,
                        std::string_view pred_type, const Span &pred_span);

// An event with its trigger and argument spans, kinds and subtypes looked up.
struct ResolvedArgument {
  std::string argument_type;
  ArgumentKind kind = ArgumentKind::kSpanOnly;
  Span span;
  std::string subtype;  // labeled only; kMissingSubtype when absent

  PhenomenonKey Key(const std::string &event_type) const;
};

struct ResolvedEvent {
  std::string id;
  std::string event_type;
  Span trigger;
  std::vector<ResolvedArgument> arguments;
};

// Resolves the events of `doc`, sorted by trigger start, trigger end, then
// id. Argument kinds come from the schema; argument types unknown to the
// schema are treated as span-only. Events without a trigger are skipped.
// Both cases are reported to `warnings`.
std::vector<ResolvedEvent> ResolveEvents(const Document &doc,
                                         const AnnotationSchema &schema,
                                         Diagnostics *warnings = nullptr);

struct EventAlignment {
  // Indices into the resolved gold and predicted event lists.
  std::vector<std::pair<size_t, size_t>> matched;
  std::vector<size_t> unmatched_gold;
  std::vector<size_t> unmatched_pred;
};

// Greedy one-to-one alignment. Gold events are visited in resolved order and
// each takes the first not-yet-matched equivalent predicted event in the
// same order.
EventAlignment AlignEvents(const std::vector<ResolvedEvent> &gold,
                           const std::vector<ResolvedEvent> &pred);

// Document-level convenience wrapper over ResolveEvents + AlignEvents.
EventAlignment AlignEvents(const Document &gold, const Document &pred,
                           const AnnotationSchema &schema);

// Multiset comparison of span-only arguments of an aligned pair. Either side
// may be null for an unaligned event.
void ScoreSpanOnlyArguments(const ResolvedEvent *gold,
                            const ResolvedEvent *pred, ScoreCounts &out);

// Multiset comparison of labeled arguments on (argument type, subtype).
void ScoreLabeledArguments(const ResolvedEvent *gold, const ResolvedEvent *pred,
                           ScoreCounts &out);

// Throws DataError if doc ids differ.
ScoreCounts ScoreDocument(const Document &gold, const Document &pred,
                          const AnnotationSchema &schema,
                          Diagnostics *warnings = nullptr);

struct ScoreOptions {
  int workers = 1;
};

struct CorpusScore {
  // Per gold document, in doc id order. Documents missing from the
  // prediction corpus are scored against an empty prediction.
  std::vector<std::pair<std::string, ScoreCounts>> per_document;
  ScoreCounts total;
  MetricReport report;
};

// Throws DataError when a predicted document has no gold counterpart.
// Results do not depend on `options.workers`.
CorpusScore ScoreCorpus(const Corpus &gold, const Corpus &pred,
                        const AnnotationSchema &schema,
                        const ScoreOptions &options = {},
                        Diagnostics *warnings = nullptr);

}  // namespace bratscore

#endif  // BRATSCORE_SCORING_H_
