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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "bratscore/analytics.h"
#include "bratscore/report.h"
#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/significance.h"
#include "bratscore/standoff.h"
#include "bratscore/testkit.h"

namespace bratscore {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> log;

  void Require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      log.push_back(what);
    }
  }
};

const AnnotationSchema &Shac() { return ShacSchema(); }

// Builds a document from (label, start, end) triples located by substring,
// so fixtures need no hand-counted offsets.
class DocBuilder {
 public:
  DocBuilder(std::string id, std::string text)
      : id_(std::move(id)), text_(std::move(text)) {}

  // Text-bound on the `nth` occurrence of `needle`, widened by `grow`
  // characters at the end.
  std::string Bound(const std::string &label, const std::string &needle,
                    int nth = 0, int grow = 0) {
    size_t at = text_.find(needle);
    for (int i = 0; i < nth; ++i) at = text_.find(needle, at + 1);
    const std::string id = fmt::format("T{}", ++bounds_);
    const size_t end = at + needle.size() + grow;
    ann_ += fmt::format("{}\t{} {} {}\t{}\n", id, label, at, end,
                        text_.substr(at, end - at));
    return id;
  }
  void Line(const std::string &line) { ann_ += line + "\n"; }
  Document Build() const {
    return ParseDocument(ann_, text_, id_, {.strict = true, .source_name = {}});
  }

 private:
  std::string id_, text_, ann_;
  int bounds_ = 0;
};

// Criterion 1: two annotations of one note that differ only in trigger
// extent and labeled-argument spans score perfectly against each other.
Outcome SlotEquivalence() {
  const std::string text = "Past IVDU. Recent cocaine use.";
  DocBuilder a("note", text), b("note", text);
  for (DocBuilder *d : {&a, &b}) {
    d->Bound("Drug", "IVDU");
    d->Bound("StatusTime", "Past");
    d->Bound("Type", "IVDU");
    d->Line("E1\tDrug:T1 Status:T2 Type:T3");
    d->Line("A1\tStatusTimeVal T2 past");
  }
  a.Bound("Drug", "cocaine");
  a.Bound("StatusTime", "use");
  a.Bound("Type", "cocaine");
  b.Bound("Drug", "cocaine use");
  b.Bound("StatusTime", "Recent");
  b.Bound("Type", "cocaine");
  for (DocBuilder *d : {&a, &b}) {
    d->Line("E2\tDrug:T4 Status:T5 Type:T6");
    d->Line("A2\tStatusTimeVal T5 current");
  }
  Corpus gold, pred;
  gold.Add(a.Build());
  pred.Add(b.Build());
  const Metrics m = ScoreCorpus(gold, pred, Shac()).report.overall;
  Outcome out;
  out.Require(m.precision == 1.0 && m.recall == 1.0 && m.f1 == 1.0,
              "overall metrics are not all 1");
  out.Require(m.counts == Counts{6, 0, 0}, "expected tp=6 fn=0 fp=0");
  out.detail = fmt::format("P={} R={} F1={} tp={}", m.precision, m.recall,
                           m.f1, m.counts.tp);
  return out;
}

// Criterion 2: span widening on a span-only argument, span widening on a
// labeled argument and a non-overlapping trigger move, one note each.
Outcome DiscriminationTriple() {
  const std::string text = "Denies alcohol. Smokes cigarettes currently.";
  Corpus gold, pred;
  std::vector<testkit::Edit> edits;
  // (note id, grow Type, grow StatusTime, moved trigger)
  const struct {
    const char *id;
    int grow_type, grow_status;
    bool move;
    testkit::EditKind kind;
    int argument_index;
  } notes[] = {
      {"widen_span_only", 1, 0, false, testkit::EditKind::kSpanWiden, 1},
      {"widen_labeled", 0, 1, false, testkit::EditKind::kSpanWiden, 0},
      {"move_trigger", 0, 0, true, testkit::EditKind::kTriggerRelocate, -1},
  };
  for (const auto &n : notes) {
    DocBuilder g(n.id, text), p(n.id, text);
    g.Bound("Tobacco", "Smokes");
    p.Bound("Tobacco", n.move ? "Denies" : "Smokes");
    g.Bound("StatusTime", "currently");
    p.Bound("StatusTime", "currently", 0, n.grow_status);
    g.Bound("Type", "cigarettes");
    p.Bound("Type", "cigarettes", 0, n.grow_type);
    for (DocBuilder *d : {&g, &p}) {
      d->Line("E1\tTobacco:T1 Status:T2 Type:T3");
      d->Line("A1\tStatusTimeVal T2 current");
    }
    gold.Add(g.Build());
    pred.Add(p.Build());
    edits.push_back({n.id, n.kind, "E1", n.argument_index, ""});
  }

  // Expected counts written out from the edit log above.
  const PhenomenonKey trigger = PhenomenonKey::Trigger("Tobacco");
  const PhenomenonKey type = PhenomenonKey::SpanOnly("Tobacco", "Type");
  const PhenomenonKey status =
      PhenomenonKey::Labeled("Tobacco", "StatusTime", "current");
  const std::map<std::string, std::map<PhenomenonKey, Counts>> expected = {
      {"widen_span_only", {{trigger, {1, 0, 0}}, {type, {0, 1, 1}},
                           {status, {1, 0, 0}}}},
      {"widen_labeled", {{trigger, {1, 0, 0}}, {type, {1, 0, 0}},
                         {status, {1, 0, 0}}}},
      {"move_trigger", {{trigger, {0, 1, 1}}, {type, {0, 1, 1}},
                        {status, {0, 1, 1}}}},
  };

  Outcome out;
  const CorpusScore score = ScoreCorpus(gold, pred, Shac());
  for (const auto &[doc_id, counts] : score.per_document) {
    const auto &want = expected.at(doc_id);
    out.Require(counts.by_key().size() == want.size(),
                doc_id + ": unexpected phenomenon keys");
    for (const auto &[key, c] : want) {
      const Counts got = counts.Get(key);
      out.Require(got == c,
                  fmt::format("{} {}/{}: got tp={} fn={} fp={}", doc_id,
                              key.event_type, key.argument_type, got.tp,
                              got.fn, got.fp));
    }
  }
  const ScoreCounts from_log =
      testkit::ExpectedCounts(gold, {pred, edits}, Shac());
  out.Require(from_log == score.total, "edit-log expectation differs");
  const Counts t = score.total.Total();
  out.detail = fmt::format("tp={} fn={} fp={}", t.tp, t.fn, t.fp);
  return out;
}

// Criterion 3: greedy alignment against the exhaustive oracle on generated
// documents with at most four events per type. The pass rate is taken over
// generator/perturber documents. Dense random instances with heavily
// overlapping triggers are reported alongside without gating.
Outcome OracleAlignment() {
  Outcome out;
  struct Tally {
    int documents = 0;
    int agree = 0;
    double rate() const { return static_cast<double>(agree) / documents; }
  };
  auto check = [&](const Document &gold, const Document &pred, Tally &t) {
    const auto greedy = AlignEvents(gold, pred, Shac()).matched.size();
    const auto oracle = testkit::OracleAlign(gold, pred);
    ++t.documents;
    if (greedy == oracle) {
      ++t.agree;
    } else {
      out.log.push_back(fmt::format("mismatch {}: greedy={} oracle={}",
                                    gold.doc_id, greedy, oracle));
    }
  };

  Tally generated;
  testkit::GeneratorConfig config;
  config.note_count = 200;
  config.density = {0.1, 0.3, 0.3, 0.2, 0.1};
  config.perturbation = {0.4, 0.1, 0.1, 0.1, 0.1, 0.1, 0.05};
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    config.seed = seed;
    const Corpus gold = testkit::GenerateGold(config, Shac());
    const Corpus pred =
        testkit::Perturb(gold, Shac(), config.perturbation, seed + 1000)
            .corpus;
    for (const auto &[id, doc] : gold.documents) {
      check(doc, *pred.Find(id), generated);
    }
  }

  Tally dense;
  testkit::Rng rng(20220607);
  for (int i = 0; i < 1000; ++i) {
    const auto [gold, pred] = testkit::RandomAlignmentInstance(
        rng, Shac(), 4, fmt::format("dense{:04d}", i));
    check(gold, pred, dense);
  }

  out.pass = generated.documents >= 1000 && generated.rate() >= 0.99;
  out.detail = fmt::format(
      "generated {}/{} agree ({:.4f}); dense overlap {}/{} agree ({:.4f})",
      generated.agree, generated.documents, generated.rate(), dense.agree,
      dense.documents, dense.rate());
  return out;
}

Document Annotated(const std::string &id, bool with_event) {
  DocBuilder d(id, "Smokes daily.");
  if (with_event) {
    d.Bound("Tobacco", "Smokes");
    d.Bound("StatusTime", "daily");
    d.Line("E1\tTobacco:T1 Status:T2");
    d.Line("A1\tStatusTimeVal T2 current");
  }
  return d.Build();
}

std::string ReportBytes(const BootstrapResult &r) {
  std::ostringstream os;
  WriteBootstrapResult(os, r, ReportFormat::kStructured);
  WriteBootstrapResult(os, r, ReportFormat::kDelimited);
  for (double d : r.deltas) os << fmt::format("{:.17g}\n", d);
  return os.str();
}

// Criterion 4: exact p-values and worker-count independence.
Outcome BootstrapExactness() {
  Outcome out;
  Corpus gold, perfect, empty;
  for (int i = 0; i < 20; ++i) {
    const std::string id = fmt::format("n{:02d}", i);
    gold.Add(Annotated(id, true));
    perfect.Add(Annotated(id, true));
    empty.Add(Annotated(id, false));
  }
  BootstrapConfig config;  // 10000 repetitions
  const BootstrapResult split =
      PairedBootstrap(gold, perfect, empty, Shac(), config);
  out.Require(split.p_numerator == 2 && split.p_denominator == 10001,
              fmt::format("perfect vs empty p={}/{}", split.p_numerator,
                          split.p_denominator));
  const BootstrapResult same =
      PairedBootstrap(gold, perfect, perfect, Shac(), config);
  out.Require(same.p_value == 1.0, fmt::format("identical p={}", same.p_value));

  testkit::GeneratorConfig gen;
  gen.note_count = 500;
  gen.seed = 11;
  const Corpus big = testkit::GenerateGold(gen, Shac());
  testkit::PerturbationRates a_rates, b_rates;
  a_rates.subtype_flip = 0.1;
  b_rates.subtype_flip = 0.15;
  b_rates.event_drop = 0.05;
  const PairedNoteCounts cached = CollectPairedCounts(
      ScoreCorpus(big, testkit::Perturb(big, Shac(), a_rates, 1).corpus,
                  Shac()),
      ScoreCorpus(big, testkit::Perturb(big, Shac(), b_rates, 2).corpus,
                  Shac()));

  std::string reference;
  double serial_seconds = 0;
  for (int workers : {1, 4, 8}) {
    BootstrapConfig c;
    c.workers = workers;
    c.keep_deltas = true;
    const auto start = Clock::now();
    const std::string bytes = ReportBytes(PairedBootstrap(cached, c));
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (workers == 1) {
      reference = bytes;
      serial_seconds = seconds;
    }
    out.Require(bytes == reference,
                fmt::format("report differs with {} workers", workers));
  }
  out.Require(serial_seconds < 10.0,
              fmt::format("500 notes x 10000 reps took {:.3f} s",
                          serial_seconds));
  out.detail = fmt::format(
      "p={}/{} identical p={} 500x10000 serial {:.3f} s", split.p_numerator,
      split.p_denominator, same.p_value, serial_seconds);
  return out;
}

Corpus Subset(const Corpus &corpus, const std::function<bool(size_t)> &keep) {
  Corpus out;
  size_t i = 0;
  for (const auto &[id, doc] : corpus.documents) {
    if (keep(i++)) out.Add(doc);
  }
  return out;
}

// Removes one event; its text-bounds stay behind unreferenced, which the
// scorer ignores.
Corpus WithoutEvent(const Corpus &corpus, size_t which) {
  Corpus out = corpus;
  for (auto &[id, doc] : out.documents) {
    if (which < doc.events.size()) {
      doc.events.erase(std::next(doc.events.begin(), which));
      return out;
    }
    which -= doc.events.size();
  }
  return out;
}

size_t EventTotal(const Corpus &corpus) {
  size_t n = 0;
  for (const auto &[id, doc] : corpus.documents) n += doc.events.size();
  return n;
}

// Criterion 5: identity, additivity, swap and deletion monotonicity.
Outcome AlgebraicProperties() {
  Outcome out;
  int violations = 0;
  auto require = [&](bool ok, const std::string &what) {
    if (!ok) ++violations;
    out.Require(ok, what);
  };
  for (uint64_t instance = 0; instance < 100; ++instance) {
    testkit::Rng rng(instance);
    testkit::GeneratorConfig config;
    config.seed = instance + 1;
    config.note_count = static_cast<int>(rng.Between(2, 12));
    const Corpus gold = testkit::GenerateGold(config, Shac());
    testkit::PerturbationRates rates{rng.Uniform() * 0.4, rng.Uniform() * 0.2,
                                     rng.Uniform() * 0.3, rng.Uniform() * 0.3,
                                     rng.Uniform() * 0.4, rng.Uniform() * 0.3,
                                     rng.Uniform() * 0.1};
    const Corpus pred =
        testkit::Perturb(gold, Shac(), rates, instance + 7).corpus;
    const std::string tag = fmt::format("instance {}", instance);

    const Metrics self = ScoreCorpus(gold, gold, Shac()).report.overall;
    require(self.f1 == 1.0 && self.counts.fn == 0 && self.counts.fp == 0,
            tag + ": score(X,X) not perfect");

    const CorpusScore whole = ScoreCorpus(gold, pred, Shac());
    const size_t cut = rng.Below(gold.size() + 1);
    auto head = [&](size_t i) { return i < cut; };
    auto tail = [&](size_t i) { return i >= cut; };
    const ScoreCounts parts =
        ScoreCorpus(Subset(gold, head), Subset(pred, head), Shac()).total +
        ScoreCorpus(Subset(gold, tail), Subset(pred, tail), Shac()).total;
    require(parts == whole.total, tag + ": concatenation not additive");

    const Metrics fwd = whole.report.overall;
    const Metrics rev = ScoreCorpus(pred, gold, Shac()).report.overall;
    require(fwd.counts.tp == rev.counts.tp && fwd.counts.fn == rev.counts.fp &&
                fwd.counts.fp == rev.counts.fn &&
                fwd.precision == rev.recall && fwd.recall == rev.precision,
            tag + ": swap does not exchange P and R");

    const Counts base = whole.total.Total();
    if (const size_t n = EventTotal(pred); n > 0) {
      const Counts less =
          ScoreCorpus(gold, WithoutEvent(pred, rng.Below(n)), Shac())
              .total.Total();
      require(less.tp <= base.tp && less.fp <= base.fp && less.fn >= base.fn &&
                  less.tp + less.fp < base.tp + base.fp &&
                  less.tp + less.fn == base.tp + base.fn,
              tag + ": deleting a prediction is not monotone");
    }
    if (const size_t n = EventTotal(gold); n > 0) {
      const Counts less =
          ScoreCorpus(WithoutEvent(gold, rng.Below(n)), pred, Shac())
              .total.Total();
      require(less.tp <= base.tp && less.fn <= base.fn && less.fp >= base.fp &&
                  less.tp + less.fn < base.tp + base.fn &&
                  less.tp + less.fp == base.tp + base.fp,
              tag + ": deleting a gold event is not monotone");
    }
  }
  out.detail = fmt::format("100 instances, {} violations", violations);
  return out;
}

// Criterion 6: serialize -> parse round trip.
Outcome RoundTrip() {
  Outcome out;
  testkit::GeneratorConfig config;
  config.note_count = 250;
  config.discontinuous_rate = 0.3;
  config.optional_argument_rate = 0.7;
  int documents = 0, discontinuous = 0, multi_argument = 0, violations = 0;
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    config.seed = seed;
    const Corpus corpus = testkit::GenerateGold(config, Shac());
    for (const auto &[id, doc] : corpus.documents) {
      ++documents;
      for (const auto &[tid, tb] : doc.text_bounds) {
        discontinuous += tb.span.discontinuous();
      }
      for (const auto &[eid, ev] : doc.events) {
        multi_argument += ev.arguments.size() > 1;
      }
      const Document back =
          ParseDocument(SerializeDocument(doc), doc.text.utf8(), doc.doc_id,
                        {.strict = true, .source_name = {}});
      Document expected = doc;
      expected.metadata = back.metadata;
      if (!(back == expected)) {
        ++violations;
        out.Require(false, "round trip changed " + id);
      }
    }
  }
  out.Require(documents >= 1000, "fewer than 1000 documents");
  out.Require(discontinuous > 0 && multi_argument > 0,
              "fixture lacks discontinuous spans or multi-argument events");
  out.detail = fmt::format(
      "{} documents, {} discontinuous spans, {} multi-argument events, {} "
      "violations",
      documents, discontinuous, multi_argument, violations);
  return out;
}

// Criterion 7: density rows against brute-force rescoring of each bucket.
Outcome DensityBucketing() {
  Outcome out;
  out.Require(DensityBucketLabel(DensityBucket::kOne) == "1" &&
                  DensityBucketLabel(DensityBucket::kTwo) == "2" &&
                  DensityBucketLabel(DensityBucket::kThreePlus) == "3+",
              "bucket labels");
  const std::map<int64_t, DensityBucket> by_count = {
      {0, DensityBucket::kZero},      {1, DensityBucket::kOne},
      {2, DensityBucket::kTwo},       {3, DensityBucket::kThreePlus},
      {4, DensityBucket::kThreePlus}, {9, DensityBucket::kThreePlus}};
  for (const auto &[n, bucket] : by_count) {
    out.Require(BucketForCount(n) == bucket, fmt::format("bucket of {}", n));
  }

  testkit::GeneratorConfig config;
  config.seed = 31;
  config.note_count = 120;
  config.density = {0.2, 0.25, 0.25, 0.15, 0.1, 0.05};
  const Corpus gold = testkit::GenerateGold(config, Shac());
  testkit::PerturbationRates rates;
  rates.subtype_flip = 0.2;
  rates.span_widen = 0.1;
  rates.event_drop = 0.15;
  rates.event_insert = 0.05;
  const Corpus pred = testkit::Perturb(gold, Shac(), rates, 32).corpus;
  const std::vector<DensityRow> rows = DensityBreakdown(gold, pred, Shac());

  auto count_type = [](const Document &doc, const std::string &type) {
    int64_t n = 0;
    for (const auto &[id, ev] : doc.events) {
      n += ev.has_trigger() && ev.event_type == type;
    }
    return n;
  };
  auto bucket_of = [](int64_t n) {
    return n == 0 ? 0 : n == 1 ? 1 : n == 2 ? 2 : 3;
  };

  std::vector<DensityRow> brute;
  std::set<int> buckets_with_errors;
  for (const EventSpec &spec : Shac().events()) {
    const std::string &type = spec.event_type;
    for (int b = 0; b < 4; ++b) {
      Corpus g, p;
      int64_t gold_events = 0;
      for (const auto &[id, doc] : gold.documents) {
        const int64_t n = count_type(doc, type);
        if (bucket_of(n) != b) continue;
        if (n == 0 && count_type(*pred.Find(id), type) == 0) continue;
        g.Add(doc);
        p.Add(*pred.Find(id));
        gold_events += n;
      }
      if (g.empty()) continue;
      Counts c;
      const ScoreCounts counts = ScoreCorpus(g, p, Shac()).total;
      for (const auto &[key, k] : counts.by_key()) {
        if (key.event_type == type) c += k;
      }
      if (c.fn + c.fp > 0) buckets_with_errors.insert(b);
      brute.push_back({type, static_cast<DensityBucket>(b),
                       static_cast<int64_t>(g.size()), gold_events,
                       Metrics::From(c)});
    }
  }
  auto order = [](const DensityRow &a, const DensityRow &b) {
    return std::tie(a.event_type, a.bucket) < std::tie(b.event_type, b.bucket);
  };
  std::vector<DensityRow> got = rows;
  std::sort(got.begin(), got.end(), order);
  std::sort(brute.begin(), brute.end(), order);
  out.Require(got.size() == brute.size(),
              fmt::format("{} rows vs {} brute-force rows", got.size(),
                          brute.size()));
  for (size_t i = 0; i < std::min(got.size(), brute.size()); ++i) {
    const DensityRow &x = got[i], &y = brute[i];
    out.Require(x.event_type == y.event_type && x.bucket == y.bucket &&
                    x.note_count == y.note_count &&
                    x.gold_events == y.gold_events &&
                    x.metrics.counts == y.metrics.counts &&
                    x.metrics.f1 == y.metrics.f1,
                fmt::format("row {} {} differs", y.event_type,
                            DensityBucketLabel(y.bucket)));
  }
  out.Require(buckets_with_errors.size() == 4,
              "fixture lacks errors in some bucket");
  out.detail = fmt::format("{} rows match brute force", brute.size());
  return out;
}

// Criterion 8: shipped schema contents and a missing required argument.
Outcome ShacSchemaContents() {
  Outcome out;
  const AnnotationSchema schema = LoadSchema(ShacSchemaConfig());
  std::set<std::string> types;
  for (const EventSpec &e : schema.events()) types.insert(e.event_type);
  out.Require(types == std::set<std::string>{"Alcohol", "Drug", "Employment",
                                             "LivingStatus", "Tobacco"},
              "event types");
  auto has_all = [&](const std::string &event, const std::string &argument,
                     const std::vector<std::string> &subtypes) {
    const ArgumentSpec *spec = schema.FindArgument(event, argument);
    if (spec == nullptr || !spec->labeled()) return false;
    return std::all_of(subtypes.begin(), subtypes.end(),
                       [&](const std::string &s) { return spec->HasSubtype(s); });
  };
  for (const char *event : {"Alcohol", "Drug", "Tobacco", "LivingStatus"}) {
    out.Require(has_all(event, "StatusTime", {"none", "current", "past"}),
                std::string(event) + " StatusTime vocabulary");
  }
  out.Require(has_all("Employment", "StatusEmploy",
                      {"employed", "unemployed", "retired", "on_disability",
                       "student", "homemaker"}),
              "StatusEmploy vocabulary");
  out.Require(has_all("LivingStatus", "TypeLiving", {"homeless"}),
              "TypeLiving vocabulary");

  DocBuilder d("note", "Works as a teacher.");
  d.Bound("Employment", "Works");
  d.Bound("Type", "teacher");
  d.Line("E1\tEmployment:T1 Type:T2");
  const auto violations = ValidateDocument(d.Build(), schema);
  const bool flagged =
      std::any_of(violations.begin(), violations.end(), [](const Violation &v) {
        return v.rule == rules::kMissingRequiredArgument &&
               v.annotation_id == "E1";
      });
  out.Require(flagged, "missing StatusEmploy not flagged");
  out.detail = fmt::format("{} event types, schema {}", types.size(),
                           schema.version());
  return out;
}

struct Criterion {
  int number;
  const char *name;
  double time_limit_seconds;  // 0 for none
  std::function<Outcome()> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "slot-equivalence", 1, SlotEquivalence},
      {2, "discrimination-triple", 0, DiscriminationTriple},
      {3, "oracle-alignment", 30, OracleAlignment},
      {4, "bootstrap-exactness", 0, BootstrapExactness},
      {5, "algebraic-properties", 0, AlgebraicProperties},
      {6, "round-trip", 0, RoundTrip},
      {7, "density-bucketing", 0, DensityBucketing},
      {8, "shac-schema", 0, ShacSchemaContents},
  };
  int failures = 0;
  for (const Criterion &c : criteria) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception &e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      outcome.pass = false;
      outcome.log.push_back(fmt::format("over the {} s limit",
                                        c.time_limit_seconds));
    }
    failures += !outcome.pass;
    std::cout << fmt::format("{} {} {} ({:.3f} s) {}\n",
                             outcome.pass ? "PASS" : "FAIL", c.number, c.name,
                             seconds, outcome.detail);
    for (const std::string &line : outcome.log) {
      std::cout << "  " << line << '\n';
    }
  }
  std::cout << fmt::format("{}/{} criteria passed\n",
                           criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace bratscore

int main() { return bratscore::Main(); }
