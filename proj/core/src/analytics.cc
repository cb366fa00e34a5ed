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

#include "bratscore/analytics.h"

#include <algorithm>
#include <tuple>

namespace bratscore {

double CorpusStats::AverageEventsPerNote(std::string_view event_type) const {
  if (note_count == 0) return 0.0;
  auto it = events_by_type.find(std::string(event_type));
  if (it == events_by_type.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(note_count);
}

CorpusStats &CorpusStats::operator+=(const CorpusStats &other) {
  note_count += other.note_count;
  for (const auto &[k, v] : other.notes_by_partition) notes_by_partition[k] += v;
  for (const auto &[k, v] : other.events_by_type) events_by_type[k] += v;
  for (const auto &[k, v] : other.subtype_frequency) subtype_frequency[k] += v;
  return *this;
}

std::map<std::string, int64_t> EventCountsByType(const Document &doc) {
  std::map<std::string, int64_t> counts;
  for (const auto &[id, ev] : doc.events) {
    if (ev.has_trigger()) ++counts[ev.event_type];
  }
  return counts;
}

CorpusStats ComputeCorpusStats(const Corpus &corpus,
                               const AnnotationSchema &schema) {
  CorpusStats stats;
  for (const auto &[doc_id, doc] : corpus.documents) {
    ++stats.note_count;
    ++stats.notes_by_partition[doc.metadata];
    for (const auto &[type, n] : EventCountsByType(doc)) {
      stats.events_by_type[type] += n;
    }
    for (const auto &ev : ResolveEvents(doc, schema)) {
      for (const auto &arg : ev.arguments) {
        if (arg.kind == ArgumentKind::kLabeled) {
          ++stats.subtype_frequency[arg.Key(ev.event_type)];
        }
      }
    }
  }
  return stats;
}

std::vector<SubtypeRow> SubtypeBreakdown(const CorpusScore &score,
                                         int64_t note_count) {
  std::vector<SubtypeRow> rows;
  for (const auto &[key, c] : score.total.by_key()) {
    if (key.kind != PhenomenonKind::kLabeledArgument) continue;
    if (c.tp + c.fn + c.fp == 0) continue;
    SubtypeRow row;
    row.event_type = key.event_type;
    row.argument_type = key.argument_type;
    row.subtype = key.subtype;
    row.metrics = Metrics::From(c);
    row.gold_count = c.tp + c.fn;
    row.average_gold_per_note =
        note_count == 0 ? 0.0
                        : static_cast<double>(row.gold_count) /
                              static_cast<double>(note_count);
    rows.push_back(std::move(row));
  }
  // by_key() order is (event type, kind, argument type, subtype), so the
  // labeled rows are already sorted.
  return rows;
}

std::vector<SubtypeRow> SubtypeBreakdown(const Corpus &gold,
                                         const Corpus &pred,
                                         const AnnotationSchema &schema) {
  return SubtypeBreakdown(ScoreCorpus(gold, pred, schema),
                          static_cast<int64_t>(gold.size()));
}

std::string_view DensityBucketLabel(DensityBucket bucket) {
  switch (bucket) {
    case DensityBucket::kZero:
      return "0";
    case DensityBucket::kOne:
      return "1";
    case DensityBucket::kTwo:
      return "2";
    case DensityBucket::kThreePlus:
      break;
  }
  return "3+";
}

DensityBucket BucketForCount(int64_t gold_events) {
  if (gold_events <= 0) return DensityBucket::kZero;
  if (gold_events == 1) return DensityBucket::kOne;
  if (gold_events == 2) return DensityBucket::kTwo;
  return DensityBucket::kThreePlus;
}

std::vector<DensityRow> DensityBreakdown(const CorpusScore &score,
                                         const Corpus &gold) {
  struct Accumulator {
    int64_t notes = 0;
    int64_t gold_events = 0;
    Counts counts;
  };
  std::map<std::pair<std::string, DensityBucket>, Accumulator> acc;

  for (const auto &[doc_id, counts] : score.per_document) {
    const Document *doc = gold.Find(doc_id);
    if (doc == nullptr) continue;
    const auto gold_counts = EventCountsByType(*doc);

    std::map<std::string, Counts> by_type;
    for (const auto &[key, c] : counts.by_key()) by_type[key.event_type] += c;
    for (const auto &[type, n] : gold_counts) by_type.try_emplace(type);

    for (const auto &[type, c] : by_type) {
      auto it = gold_counts.find(type);
      const int64_t n = it == gold_counts.end() ? 0 : it->second;
      if (n == 0 && c.fp == 0) continue;
      Accumulator &a = acc[{type, BucketForCount(n)}];
      ++a.notes;
      a.gold_events += n;
      a.counts += c;
    }
  }

  std::vector<DensityRow> rows;
  for (const auto &[key, a] : acc) {
    rows.push_back(
        {key.first, key.second, a.notes, a.gold_events, Metrics::From(a.counts)});
  }
  return rows;
}

std::vector<DensityRow> DensityBreakdown(const Corpus &gold,
                                         const Corpus &pred,
                                         const AnnotationSchema &schema) {
  return DensityBreakdown(ScoreCorpus(gold, pred, schema), gold);
}

}  // namespace bratscore
