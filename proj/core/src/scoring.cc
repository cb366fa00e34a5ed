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

#include "bratscore/scoring.h"

#include <algorithm>
#include <map>
#include <tuple>

#include <fmt/format.h>

#include "parallel.h"

namespace bratscore {
namespace {

void AddCounts(ScoreCounts &out, const PhenomenonKey &key, int64_t tp,
               int64_t fn, int64_t fp) {
  if (tp > 0) out.AddTp(key, tp);
  if (fn > 0) out.AddFn(key, fn);
  if (fp > 0) out.AddFp(key, fp);
}

// Multiset comparison: min(g, p) true positives per tuple, the rest are
// misses or false alarms.
template <typename Tuple, typename KeyFn>
void CompareMultisets(const std::map<Tuple, int64_t> &gold,
                      const std::map<Tuple, int64_t> &pred, KeyFn key_of,
                      ScoreCounts &out) {
  for (const auto &[tuple, g] : gold) {
    auto it = pred.find(tuple);
    const int64_t p = it == pred.end() ? 0 : it->second;
    const int64_t tp = std::min(g, p);
    AddCounts(out, key_of(tuple), tp, g - tp, p - tp);
  }
  for (const auto &[tuple, p] : pred) {
    if (gold.count(tuple) == 0) AddCounts(out, key_of(tuple), 0, 0, p);
  }
}

const std::string &EventTypeOf(const ResolvedEvent *gold,
                               const ResolvedEvent *pred) {
  return gold != nullptr ? gold->event_type : pred->event_type;
}

}  // namespace

std::string_view PhenomenonKindName(PhenomenonKind kind) {
  switch (kind) {
    case PhenomenonKind::kTrigger:
      return "trigger";
    case PhenomenonKind::kSpanOnlyArgument:
      return "span_only";
    case PhenomenonKind::kLabeledArgument:
      break;
  }
  return "labeled";
}

PhenomenonKey PhenomenonKey::Trigger(std::string event_type) {
  return {PhenomenonKind::kTrigger, std::move(event_type), "", ""};
}

PhenomenonKey PhenomenonKey::SpanOnly(std::string event_type,
                                      std::string argument_type) {
  return {PhenomenonKind::kSpanOnlyArgument, std::move(event_type),
          std::move(argument_type), ""};
}

PhenomenonKey PhenomenonKey::Labeled(std::string event_type,
                                     std::string argument_type,
                                     std::string subtype) {
  return {PhenomenonKind::kLabeledArgument, std::move(event_type),
          std::move(argument_type), std::move(subtype)};
}

ScoreCounts &ScoreCounts::operator+=(const ScoreCounts &other) {
  for (const auto &[key, c] : other.counts_) counts_[key] += c;
  return *this;
}

Counts ScoreCounts::Get(const PhenomenonKey &key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? Counts{} : it->second;
}

Counts ScoreCounts::Total() const {
  Counts total;
  for (const auto &[key, c] : counts_) total += c;
  return total;
}

double F1Score(const Counts &c) {
  const int64_t denom = 2 * c.tp + c.fp + c.fn;
  if (c.tp == 0 || denom == 0) return 0.0;
  return static_cast<double>(2 * c.tp) / static_cast<double>(denom);
}

Metrics Metrics::From(const Counts &c) {
  Metrics m;
  m.counts = c;
  if (c.tp + c.fp > 0) {
    m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn > 0) {
    m.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  // 2PR/(P+R) simplified to counts, which keeps perfect scores exactly 1.
  m.f1 = F1Score(c);
  return m;
}

MetricReport ComputeMetricReport(const ScoreCounts &counts) {
  MetricReport report;
  std::map<std::string, Counts> by_event;
  std::map<std::pair<std::string, std::string>, Counts> by_argument;
  std::map<std::pair<std::string, std::string>, Counts> by_subtype;
  for (const auto &[key, c] : counts.by_key()) {
    report.per_key.push_back({key, Metrics::From(c)});
    by_event[key.event_type] += c;
    if (key.kind != PhenomenonKind::kTrigger) {
      by_argument[{key.event_type, key.argument_type}] += c;
    }
    if (key.kind == PhenomenonKind::kLabeledArgument) {
      by_subtype[{key.argument_type, key.subtype}] += c;
    }
  }
  for (const auto &[event_type, c] : by_event) {
    report.by_event_type.push_back({event_type, "", "", Metrics::From(c)});
  }
  for (const auto &[k, c] : by_argument) {
    report.by_argument_type.push_back({k.first, k.second, "", Metrics::From(c)});
  }
  for (const auto &[k, c] : by_subtype) {
    report.by_subtype.push_back({"", k.first, k.second, Metrics::From(c)});
  }
  report.overall = Metrics::From(counts.Total());
  return report;
}

bool TriggersEquivalent(std::string_view gold_type, const Span &gold_span,
                        std::string_view pred_type, const Span &pred_span) {
  return gold_type == pred_type && gold_span.Overlaps(pred_span);
}

PhenomenonKey ResolvedArgument::Key(const std::string &event_type) const {
  if (kind == ArgumentKind::kLabeled) {
    return PhenomenonKey::Labeled(event_type, argument_type, subtype);
  }
  return PhenomenonKey::SpanOnly(event_type, argument_type);
}

std::vector<ResolvedEvent> ResolveEvents(const Document &doc,
                                         const AnnotationSchema &schema,
                                         Diagnostics *warnings) {
  auto warn = [&](std::string message) {
    if (warnings != nullptr) {
      warnings->push_back({doc.doc_id, 0, std::move(message)});
    }
  };
  const bool on_event = schema.attribute_target() == AttributeTarget::kEvent;
  std::vector<ResolvedEvent> out;
  for (const auto &[id, ev] : doc.events) {
    const TextBound *trigger = doc.FindTextBound(ev.trigger);
    if (!ev.has_trigger() || trigger == nullptr) {
      warn(fmt::format("event '{}' has no trigger and is not scored", id));
      continue;
    }
    ResolvedEvent resolved{id, ev.event_type, trigger->span, {}};
    const EventSpec *spec = schema.FindEvent(ev.event_type);
    for (const auto &arg : ev.arguments) {
      const TextBound *tb = doc.FindTextBound(arg.target);
      if (tb == nullptr) continue;
      ResolvedArgument ra;
      ra.argument_type = tb->label;
      ra.span = tb->span;
      const ArgumentSpec *arg_spec =
          spec == nullptr ? nullptr : spec->FindByType(tb->label);
      if (arg_spec == nullptr) {
        warn(fmt::format("event '{}': argument type '{}' is not in the schema "
                         "for '{}'; scored as span-only",
                         id, tb->label, ev.event_type));
      } else if (arg_spec->labeled()) {
        ra.kind = ArgumentKind::kLabeled;
        const AttributeAnnotation *attr = doc.FindAttribute(
            on_event ? id : tb->id, arg_spec->attribute_name);
        if (attr == nullptr) {
          warn(fmt::format("event '{}': '{}' argument '{}' has no subtype",
                           id, tb->label, tb->id));
          ra.subtype = std::string(kMissingSubtype);
        } else {
          ra.subtype = attr->value;
        }
      }
      resolved.arguments.push_back(std::move(ra));
    }
    out.push_back(std::move(resolved));
  }
  IdLess id_less;
  std::sort(out.begin(), out.end(),
            [&](const ResolvedEvent &a, const ResolvedEvent &b) {
              if (a.trigger.start() != b.trigger.start()) {
                return a.trigger.start() < b.trigger.start();
              }
              if (a.trigger.end() != b.trigger.end()) {
                return a.trigger.end() < b.trigger.end();
              }
              return id_less(a.id, b.id);
            });
  return out;
}

EventAlignment AlignEvents(const std::vector<ResolvedEvent> &gold,
                           const std::vector<ResolvedEvent> &pred) {
  EventAlignment alignment;
  std::vector<bool> used(pred.size(), false);
  for (size_t g = 0; g < gold.size(); ++g) {
    bool matched = false;
    for (size_t p = 0; p < pred.size(); ++p) {
      if (used[p]) continue;
      if (TriggersEquivalent(gold[g].event_type, gold[g].trigger,
                             pred[p].event_type, pred[p].trigger)) {
        used[p] = true;
        alignment.matched.emplace_back(g, p);
        matched = true;
        break;
      }
    }
    if (!matched) alignment.unmatched_gold.push_back(g);
  }
  for (size_t p = 0; p < pred.size(); ++p) {
    if (!used[p]) alignment.unmatched_pred.push_back(p);
  }
  return alignment;
}

EventAlignment AlignEvents(const Document &gold, const Document &pred,
                           const AnnotationSchema &schema) {
  return AlignEvents(ResolveEvents(gold, schema), ResolveEvents(pred, schema));
}

void ScoreSpanOnlyArguments(const ResolvedEvent *gold,
                            const ResolvedEvent *pred, ScoreCounts &out) {
  using Tuple = std::pair<std::string, Span>;
  std::map<Tuple, int64_t> g, p;
  auto collect = [](const ResolvedEvent *ev, std::map<Tuple, int64_t> &into) {
    if (ev == nullptr) return;
    for (const auto &arg : ev->arguments) {
      if (arg.kind == ArgumentKind::kSpanOnly) {
        ++into[{arg.argument_type, arg.span}];
      }
    }
  };
  collect(gold, g);
  collect(pred, p);
  if (g.empty() && p.empty()) return;
  const std::string &event_type = EventTypeOf(gold, pred);
  CompareMultisets(
      g, p,
      [&](const Tuple &t) { return PhenomenonKey::SpanOnly(event_type, t.first); },
      out);
}

void ScoreLabeledArguments(const ResolvedEvent *gold, const ResolvedEvent *pred,
                           ScoreCounts &out) {
  using Tuple = std::pair<std::string, std::string>;
  std::map<Tuple, int64_t> g, p;
  auto collect = [](const ResolvedEvent *ev, std::map<Tuple, int64_t> &into) {
    if (ev == nullptr) return;
    for (const auto &arg : ev->arguments) {
      if (arg.kind == ArgumentKind::kLabeled) {
        ++into[{arg.argument_type, arg.subtype}];
      }
    }
  };
  collect(gold, g);
  collect(pred, p);
  if (g.empty() && p.empty()) return;
  const std::string &event_type = EventTypeOf(gold, pred);
  CompareMultisets(
      g, p,
      [&](const Tuple &t) {
        return PhenomenonKey::Labeled(event_type, t.first, t.second);
      },
      out);
}

ScoreCounts ScoreDocument(const Document &gold, const Document &pred,
                          const AnnotationSchema &schema,
                          Diagnostics *warnings) {
  if (gold.doc_id != pred.doc_id) {
    throw DataError(fmt::format("cannot score '{}' against '{}'", pred.doc_id,
                                gold.doc_id));
  }
  const auto g = ResolveEvents(gold, schema, warnings);
  const auto p = ResolveEvents(pred, schema, warnings);
  const EventAlignment alignment = AlignEvents(g, p);

  ScoreCounts out;
  for (const auto &[gi, pi] : alignment.matched) {
    out.AddTp(PhenomenonKey::Trigger(g[gi].event_type));
    ScoreSpanOnlyArguments(&g[gi], &p[pi], out);
    ScoreLabeledArguments(&g[gi], &p[pi], out);
  }
  for (size_t gi : alignment.unmatched_gold) {
    out.AddFn(PhenomenonKey::Trigger(g[gi].event_type));
    ScoreSpanOnlyArguments(&g[gi], nullptr, out);
    ScoreLabeledArguments(&g[gi], nullptr, out);
  }
  for (size_t pi : alignment.unmatched_pred) {
    out.AddFp(PhenomenonKey::Trigger(p[pi].event_type));
    ScoreSpanOnlyArguments(nullptr, &p[pi], out);
    ScoreLabeledArguments(nullptr, &p[pi], out);
  }
  return out;
}

CorpusScore ScoreCorpus(const Corpus &gold, const Corpus &pred,
                        const AnnotationSchema &schema,
                        const ScoreOptions &options, Diagnostics *warnings) {
  for (const auto &[doc_id, doc] : pred.documents) {
    if (gold.Find(doc_id) == nullptr) {
      throw DataError(
          fmt::format("predicted document '{}' has no gold counterpart",
                      doc_id));
    }
  }
  std::vector<const Document *> gold_docs;
  gold_docs.reserve(gold.size());
  for (const auto &[doc_id, doc] : gold.documents) gold_docs.push_back(&doc);

  std::vector<ScoreCounts> counts(gold_docs.size());
  std::vector<Diagnostics> doc_warnings(gold_docs.size());
  internal::ParallelFor(
      gold_docs.size(), options.workers,
      [&](size_t i) {
        const Document &g = *gold_docs[i];
        Diagnostics *w = warnings != nullptr ? &doc_warnings[i] : nullptr;
        if (const Document *p = pred.Find(g.doc_id)) {
          counts[i] = ScoreDocument(g, *p, schema, w);
        } else {
          Document empty;
          empty.doc_id = g.doc_id;
          empty.text = g.text;
          counts[i] = ScoreDocument(g, empty, schema, w);
        }
      },
      /*chunk=*/4);

  CorpusScore result;
  result.per_document.reserve(gold_docs.size());
  for (size_t i = 0; i < gold_docs.size(); ++i) {
    result.total += counts[i];
    result.per_document.emplace_back(gold_docs[i]->doc_id, std::move(counts[i]));
    if (warnings != nullptr) {
      warnings->insert(warnings->end(), doc_warnings[i].begin(),
                       doc_warnings[i].end());
    }
  }
  result.report = ComputeMetricReport(result.total);
  return result;
}

}  // namespace bratscore
