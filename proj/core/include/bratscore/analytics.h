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

// Corpus statistics and error-analysis views over a scored corpus.
//
// The breakdowns read the per-note counts of a single ScoreCorpus pass; they
// never realign events themselves.

#ifndef BRATSCORE_ANALYTICS_H_
#define BRATSCORE_ANALYTICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/standoff.h"

namespace bratscore {

struct CorpusStats {
  int64_t note_count = 0;
  std::map<DocumentMetadata, int64_t> notes_by_partition;
  std::map<std::string, int64_t> events_by_type;
  // Labeled argument occurrences keyed by (event type, argument type,
  // subtype).
  std::map<PhenomenonKey, int64_t> subtype_frequency;

  // events_by_type[t] / note_count, 0 for an empty corpus.
  double AverageEventsPerNote(std::string_view event_type) const;

  CorpusStats &operator+=(const CorpusStats &other);
  friend bool operator==(const CorpusStats &, const CorpusStats &) = default;
};

CorpusStats ComputeCorpusStats(const Corpus &corpus,
                               const AnnotationSchema &schema);

struct SubtypeRow {
  std::string event_type;
  std::string argument_type;
  std::string subtype;
  Metrics metrics;
  int64_t gold_count = 0;
  double average_gold_per_note = 0;
};

// Labeled-argument keys only, ordered by (event type, argument type,
// subtype). Keys seen in neither gold nor predictions have no row.
std::vector<SubtypeRow> SubtypeBreakdown(const CorpusScore &score,
                                         int64_t note_count);
std::vector<SubtypeRow> SubtypeBreakdown(const Corpus &gold,
                                         const Corpus &pred,
                                         const AnnotationSchema &schema);

enum class DensityBucket { kZero, kOne, kTwo, kThreePlus };

std::string_view DensityBucketLabel(DensityBucket bucket);
DensityBucket BucketForCount(int64_t gold_events);

struct DensityRow {
  std::string event_type;
  DensityBucket bucket = DensityBucket::kOne;
  int64_t note_count = 0;
  int64_t gold_events = 0;
  Metrics metrics;
};

// Per event type, every note goes to the bucket of its gold event count for
// that type and contributes its counts restricted to that type. Notes with
// no gold events of a type land in the "0" pseudo-bucket only if they carry
// predictions of it. Buckets with no notes have no row.
std::vector<DensityRow> DensityBreakdown(const CorpusScore &score,
                                         const Corpus &gold);
std::vector<DensityRow> DensityBreakdown(const Corpus &gold,
                                         const Corpus &pred,
                                         const AnnotationSchema &schema);

// Number of gold events of each type in `doc` (events with a trigger only).
std::map<std::string, int64_t> EventCountsByType(const Document &doc);

}  // namespace bratscore

#endif  // BRATSCORE_ANALYTICS_H_
