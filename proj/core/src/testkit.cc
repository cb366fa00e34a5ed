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

#include "bratscore/testkit.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"

namespace bratscore::testkit {
namespace {

uint64_t SplitMix64(uint64_t &x) {
  uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Characters in a UTF-8 string.
int64_t CharCount(std::string_view s) {
  int64_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

const std::vector<std::string> kLeads = {"Reports", "History", "Patient",
                                         "Social", "Notes:"};

const std::vector<std::string> kFillerWords = {
    "family",  "history",   "noncontributory", "travel",  "pleasant",
    "café",    "naïve",     "otherwise",       "routine", "unremarkable",
    "reviewed", "clinic",   "follow",          "visit",   "stable"};

std::vector<std::string> TriggerWords(std::string_view event_type) {
  if (event_type == "Alcohol") return {"alcohol", "etoh", "drinks", "beer use"};
  if (event_type == "Drug") {
    return {"cocaine", "heroin", "marijuana", "ivdu", "drug use"};
  }
  if (event_type == "Tobacco") return {"tobacco", "smoker", "cigarettes"};
  if (event_type == "Employment") return {"works", "employed as", "job"};
  if (event_type == "LivingStatus") return {"lives", "resides", "residence"};
  std::string lower;
  for (char c : event_type) {
    lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return {lower};
}

std::vector<std::string> SpanWords(std::string_view argument_type) {
  if (argument_type == "Duration") {
    return {"for 10 years", "x5 yrs", "since 2010", "for months"};
  }
  if (argument_type == "Type") {
    return {"beer", "crack cocaine", "cigars", "delivery driver", "red wine"};
  }
  return {"some detail", "further info"};
}

std::string Humanize(std::string_view subtype) {
  std::string out(subtype);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

void CheckRate(double rate, std::string_view name) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("{} must be in [0, 1], got {}", name, rate));
  }
}

void CheckDistribution(const std::vector<double> &weights,
                       std::string_view name) {
  if (weights.empty()) {
    throw std::invalid_argument(fmt::format("{} is empty", name));
  }
  double sum = 0;
  for (double w : weights) {
    if (!(w >= 0)) {
      throw std::invalid_argument(fmt::format("{} has a negative weight", name));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(
        fmt::format("{} sums to {}, not 1", name, sum));
  }
}

// Accumulates note text and tracks character offsets.
class NoteBuilder {
 public:
  Fragment Append(std::string_view s) {
    const Fragment f{chars_, chars_ + CharCount(s)};
    text_ += s;
    chars_ = f.end;
    return f;
  }
  std::string Take() { return std::move(text_); }

 private:
  std::string text_;
  int64_t chars_ = 0;
};

struct Ids {
  int t = 0;
  int e = 0;
  int a = 0;
  std::string T() { return fmt::format("T{}", ++t); }
  std::string E() { return fmt::format("E{}", ++e); }
  std::string A() { return fmt::format("A{}", ++a); }
};

std::string DrawSubtype(Rng &rng, const ArgumentSpec &arg,
                        const GeneratorConfig &config) {
  auto it = config.subtype_distribution.find(arg.argument_type);
  if (it == config.subtype_distribution.end()) return rng.Pick(arg.subtypes);
  std::vector<std::string> names;
  std::vector<double> weights;
  for (const auto &[name, w] : it->second) {
    if (!arg.HasSubtype(name)) continue;
    names.push_back(name);
    weights.push_back(w);
  }
  return names[rng.Categorical(weights)];
}

// Writes one event line and its annotations.
void EmitEvent(const EventSpec &spec, const GeneratorConfig &config,
               const AnnotationSchema &schema, Rng &rng, NoteBuilder &text,
               Ids &ids, Document &doc) {
  struct PendingTb {
    std::string id;
    std::string label;
    std::vector<Fragment> fragments;
  };
  std::vector<PendingTb> tbs;

  text.Append(rng.Pick(kLeads));
  text.Append(" ");
  EventAnnotation ev;
  ev.id = ids.E();
  ev.event_type = spec.event_type;
  const std::string trigger_id = ids.T();
  tbs.push_back({trigger_id, spec.event_type,
                 {text.Append(rng.Pick(TriggerWords(spec.event_type)))}});
  ev.trigger = trigger_id;

  std::vector<const ArgumentSpec *> chosen;
  for (const auto &arg : spec.arguments) {
    if (arg.required || rng.Bernoulli(config.optional_argument_rate)) {
      chosen.push_back(&arg);
    }
  }
  text.Append(chosen.empty() ? " noted" : " with ");
  for (size_t i = 0; i < chosen.size(); ++i) {
    const ArgumentSpec &arg = *chosen[i];
    if (i > 0) text.Append(", ");
    const std::string tb_id = ids.T();
    std::vector<Fragment> fragments;
    if (arg.labeled()) {
      const std::string subtype = DrawSubtype(rng, arg, config);
      fragments.push_back(text.Append(Humanize(subtype)));
      const bool on_event =
          schema.attribute_target() == AttributeTarget::kEvent;
      AttributeAnnotation attr{ids.A(), arg.attribute_name,
                               on_event ? ev.id : tb_id, subtype};
      doc.attributes.emplace(attr.id, std::move(attr));
    } else {
      const std::string phrase = rng.Pick(SpanWords(arg.argument_type));
      const size_t first_space = phrase.find(' ');
      const size_t last_space = phrase.rfind(' ');
      if (first_space != std::string::npos &&
          rng.Bernoulli(config.discontinuous_rate)) {
        fragments.push_back(text.Append(phrase.substr(0, first_space)));
        text.Append(phrase.substr(first_space, last_space - first_space + 1));
        fragments.push_back(text.Append(phrase.substr(last_space + 1)));
      } else {
        fragments.push_back(text.Append(phrase));
      }
    }
    tbs.push_back({tb_id, arg.argument_type, std::move(fragments)});
    ev.arguments.push_back({arg.role, tb_id});
  }
  text.Append(" .\n");
  doc.events.emplace(ev.id, std::move(ev));
  for (auto &tb : tbs) {
    TextBound bound;
    bound.id = tb.id;
    bound.label = tb.label;
    bound.span = Span::Make(std::move(tb.fragments));
    doc.text_bounds.emplace(bound.id, std::move(bound));
  }
}

void EmitFiller(Rng &rng, NoteBuilder &text) {
  const int64_t words = rng.Between(4, 7);
  for (int64_t i = 0; i < words; ++i) {
    if (i > 0) text.Append(" ");
    text.Append(rng.Pick(kFillerWords));
  }
  text.Append(" .\n");
}

void NumericSuffixMax(const Document &doc, char prefix,
                             int *max_value) {
  auto scan = [&](const std::string &id) {
    if (id.empty() || id.front() != prefix) return;
    int v = 0;
    for (size_t i = 1; i < id.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(id[i]))) return;
      v = v * 10 + (id[i] - '0');
    }
    *max_value = std::max(*max_value, v);
  };
  for (const auto &[id, x] : doc.text_bounds) scan(id);
  for (const auto &[id, x] : doc.events) scan(id);
  for (const auto &[id, x] : doc.attributes) scan(id);
}

// Whitespace-delimited tokens of at least three characters with no
// annotation within five characters.
std::vector<Fragment> FreeTokens(const Document &doc) {
  std::vector<Fragment> tokens;
  const int64_t n = doc.text.length();
  auto is_space = [&](int64_t i) {
    const std::string_view c = doc.text.Slice(i, i + 1);
    return c == " " || c == "\n" || c == "\t" || c == "\r";
  };
  int64_t i = 0;
  while (i < n) {
    while (i < n && is_space(i)) ++i;
    int64_t j = i;
    while (j < n && !is_space(j)) ++j;
    if (j - i >= 3) tokens.push_back({i, j});
    i = j;
  }
  std::vector<Fragment> free;
  for (const Fragment &t : tokens) {
    const Span guard = Span::Single(std::max<int64_t>(0, t.start - 5), t.end + 5);
    bool clear = true;
    for (const auto &[id, tb] : doc.text_bounds) {
      if (guard.Overlaps(tb.span)) {
        clear = false;
        break;
      }
    }
    if (clear) free.push_back(t);
  }
  return free;
}

void SetSpan(Document &doc, TextBound &tb, std::vector<Fragment> fragments) {
  tb.span = Span::Make(std::move(fragments));
  tb.covered_text = CoveredText(doc.text, tb.span);
}

// Slot keys of an event's arguments, resolved directly from the schema.
std::vector<PhenomenonKey> ArgumentKeys(const Document &doc,
                                        const EventAnnotation &ev,
                                        const AnnotationSchema &schema) {
  std::vector<PhenomenonKey> keys;
  for (const auto &arg : ev.arguments) {
    const TextBound &tb = doc.text_bounds.at(arg.target);
    const ArgumentSpec *spec = schema.FindArgument(ev.event_type, tb.label);
    if (spec != nullptr && spec->labeled()) {
      const std::string &holder =
          schema.attribute_target() == AttributeTarget::kEvent ? ev.id : tb.id;
      std::string subtype(kMissingSubtype);
      for (const auto &[aid, attr] : doc.attributes) {
        if (attr.target == holder && attr.name == spec->attribute_name) {
          subtype = attr.value;
        }
      }
      keys.push_back(PhenomenonKey::Labeled(ev.event_type, tb.label, subtype));
    } else {
      keys.push_back(PhenomenonKey::SpanOnly(ev.event_type, tb.label));
    }
  }
  return keys;
}

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto &s : state_) s = SplitMix64(x);
}

uint64_t Rng::Next() {
  const uint64_t result = Rotl(state_[1] * 5, 7) * 9;
  const uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = Rotl(state_[3], 45);
  return result;
}

uint64_t Rng::Below(uint64_t bound) {
  // Rejection on the top of the range keeps the draw unbiased.
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % bound;
}

int64_t Rng::Between(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(Below(static_cast<uint64_t>(hi - lo) + 1));
}

double Rng::Uniform() {
  return static_cast<double>(Next() >> 11) * 0x1.0p-53;
}

size_t Rng::Categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = Uniform() * total;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  // Rounding left u past the end: take the last positive weight.
  for (size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0) return i;
  }
  return 0;
}

bool PerturbationRates::AllZero() const {
  return trigger_shift == 0 && trigger_relocate == 0 && span_widen == 0 &&
         span_shrink == 0 && subtype_flip == 0 && event_drop == 0 &&
         event_insert == 0;
}

void GeneratorConfig::Validate(const AnnotationSchema &schema) const {
  if (note_count < 0) throw std::invalid_argument("note_count < 0");
  for (const auto &p : partitions) {
    if (p.notes < 0) throw std::invalid_argument("partition notes < 0");
  }
  if (filler_lines < 0) throw std::invalid_argument("filler_lines < 0");
  CheckRate(optional_argument_rate, "optional_argument_rate");
  CheckRate(discontinuous_rate, "discontinuous_rate");
  CheckRate(perturbation.trigger_shift, "trigger_shift");
  CheckRate(perturbation.trigger_relocate, "trigger_relocate");
  CheckRate(perturbation.span_widen, "span_widen");
  CheckRate(perturbation.span_shrink, "span_shrink");
  CheckRate(perturbation.subtype_flip, "subtype_flip");
  CheckRate(perturbation.event_drop, "event_drop");
  CheckRate(perturbation.event_insert, "event_insert");
  CheckDistribution(density, "density");
  for (const auto &[type, weights] : density_by_type) {
    if (schema.FindEvent(type) == nullptr) {
      throw std::invalid_argument(
          fmt::format("density for unknown event type '{}'", type));
    }
    CheckDistribution(weights, fmt::format("density for '{}'", type));
  }
  for (const auto &[arg_type, dist] : subtype_distribution) {
    std::vector<double> weights;
    for (const auto &[name, w] : dist) weights.push_back(w);
    if (weights.empty()) {
      throw std::invalid_argument(fmt::format(
          "subtype distribution for '{}' is empty", arg_type));
    }
    CheckDistribution(weights,
                      fmt::format("subtype distribution for '{}'", arg_type));
    for (const auto &ev : schema.events()) {
      const ArgumentSpec *arg = ev.FindByType(arg_type);
      if (arg == nullptr || !arg->labeled()) continue;
      double usable = 0;
      for (const auto &[name, w] : dist) {
        if (arg->HasSubtype(name)) usable += w;
      }
      if (usable <= 0) {
        throw std::invalid_argument(fmt::format(
            "subtype distribution for '{}' cannot produce a subtype of '{}'",
            arg_type, ev.event_type));
      }
    }
  }
}

GeneratorConfig ParseGeneratorConfig(std::string_view json_text) {
  using nlohmann::json;
  GeneratorConfig config;
  json root;
  try {
    root = json::parse(json_text, nullptr, true, true);
  } catch (const json::parse_error &e) {
    throw std::invalid_argument(
        fmt::format("generator config is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) {
    throw std::invalid_argument("generator config must be an object");
  }
  try {
    for (const auto &[key, value] : root.items()) {
      if (key == "seed") {
        config.seed = value.get<uint64_t>();
      } else if (key == "note_count") {
        config.note_count = value.get<int>();
      } else if (key == "partitions") {
        for (const auto &p : value) {
          PartitionSpec spec;
          const auto source = ParseSource(p.at("source").get<std::string>());
          const auto split = ParseSplit(p.at("split").get<std::string>());
          if (!source || !split) {
            throw std::invalid_argument(
                fmt::format("bad partition {}", p.dump()));
          }
          spec.metadata = {*source, *split};
          spec.notes = p.at("notes").get<int>();
          config.partitions.push_back(spec);
        }
      } else if (key == "density") {
        config.density = value.get<std::vector<double>>();
      } else if (key == "density_by_type") {
        config.density_by_type =
            value.get<std::map<std::string, std::vector<double>>>();
      } else if (key == "subtype_distribution") {
        config.subtype_distribution =
            value.get<std::map<std::string, std::map<std::string, double>>>();
      } else if (key == "optional_argument_rate") {
        config.optional_argument_rate = value.get<double>();
      } else if (key == "discontinuous_rate") {
        config.discontinuous_rate = value.get<double>();
      } else if (key == "filler_lines") {
        config.filler_lines = value.get<int>();
      } else if (key == "perturbation") {
        PerturbationRates &r = config.perturbation;
        for (const auto &[name, rate] : value.items()) {
          const double v = rate.get<double>();
          if (name == "trigger_shift") {
            r.trigger_shift = v;
          } else if (name == "trigger_relocate") {
            r.trigger_relocate = v;
          } else if (name == "span_widen") {
            r.span_widen = v;
          } else if (name == "span_shrink") {
            r.span_shrink = v;
          } else if (name == "subtype_flip") {
            r.subtype_flip = v;
          } else if (name == "event_drop") {
            r.event_drop = v;
          } else if (name == "event_insert") {
            r.event_insert = v;
          } else {
            throw std::invalid_argument(
                fmt::format("unknown perturbation '{}'", name));
          }
        }
      } else {
        throw std::invalid_argument(
            fmt::format("unknown generator config key '{}'", key));
      }
    }
  } catch (const json::exception &e) {
    throw std::invalid_argument(fmt::format("generator config: {}", e.what()));
  }
  return config;
}

Corpus GenerateGold(const GeneratorConfig &config,
                    const AnnotationSchema &schema) {
  config.Validate(schema);
  Rng rng(config.seed);

  std::vector<DocumentMetadata> notes;
  if (config.partitions.empty()) {
    notes.assign(static_cast<size_t>(config.note_count), DocumentMetadata{});
  } else {
    for (const auto &p : config.partitions) {
      notes.insert(notes.end(), static_cast<size_t>(p.notes), p.metadata);
    }
  }

  Corpus corpus;
  for (size_t n = 0; n < notes.size(); ++n) {
    Document doc;
    doc.metadata = notes[n];
    doc.doc_id = fmt::format("{}/{}/note{:04d}", SourceName(notes[n].source),
                             SplitName(notes[n].split), n + 1);

    // One entry per line: an event spec, or null for a filler line.
    std::vector<const EventSpec *> lines;
    for (const auto &spec : schema.events()) {
      auto it = config.density_by_type.find(spec.event_type);
      const auto &weights =
          it == config.density_by_type.end() ? config.density : it->second;
      const size_t k = rng.Categorical(weights);
      lines.insert(lines.end(), k, &spec);
    }
    lines.insert(lines.end(), static_cast<size_t>(config.filler_lines),
                 nullptr);
    for (size_t i = lines.size(); i > 1; --i) {
      std::swap(lines[i - 1], lines[rng.Below(i)]);
    }

    NoteBuilder text;
    Ids ids;
    for (const EventSpec *spec : lines) {
      if (spec == nullptr) {
        EmitFiller(rng, text);
      } else {
        EmitEvent(*spec, config, schema, rng, text, ids, doc);
      }
    }
    doc.text = NoteText(text.Take());
    for (auto &[id, tb] : doc.text_bounds) {
      tb.covered_text = CoveredText(doc.text, tb.span);
    }
    corpus.Add(std::move(doc));
  }
  return corpus;
}

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kTriggerShift:
      return "trigger_shift";
    case EditKind::kTriggerRelocate:
      return "trigger_relocate";
    case EditKind::kSpanWiden:
      return "span_widen";
    case EditKind::kSpanShrink:
      return "span_shrink";
    case EditKind::kSubtypeFlip:
      return "subtype_flip";
    case EditKind::kEventDrop:
      return "event_drop";
    case EditKind::kEventInsert:
      break;
  }
  return "event_insert";
}

PerturbResult Perturb(const Corpus &gold, const AnnotationSchema &schema,
                      const PerturbationRates &rates, uint64_t seed) {
  PerturbResult result;
  Rng rng(seed);
  const bool on_event = schema.attribute_target() == AttributeTarget::kEvent;

  for (const auto &[doc_id, gold_doc] : gold.documents) {
    Document doc = gold_doc;
    auto log = [&](EditKind kind, const std::string &event_id, int arg,
                   std::string detail) {
      result.edits.push_back({doc_id, kind, event_id, arg, std::move(detail)});
    };

    std::map<std::string, int> refs;
    for (const auto &[id, ev] : doc.events) {
      if (ev.has_trigger()) ++refs[ev.trigger];
      for (const auto &arg : ev.arguments) ++refs[arg.target];
    }
    std::vector<Fragment> free = FreeTokens(doc);
    auto take_free = [&]() {
      const size_t i = rng.Below(free.size());
      const Fragment f = free[i];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(i));
      return f;
    };

    std::vector<std::string> event_ids;
    for (const auto &[id, ev] : doc.events) {
      if (ev.has_trigger()) event_ids.push_back(id);
    }
    for (const std::string &id : event_ids) {
      if (rng.Bernoulli(rates.event_drop)) {
        doc.events.erase(id);
        log(EditKind::kEventDrop, id, -1, "");
        continue;
      }
      EventAnnotation &ev = doc.events.at(id);
      TextBound &trigger = doc.text_bounds.at(ev.trigger);
      const bool own_trigger = refs[ev.trigger] == 1;
      if (rng.Bernoulli(rates.trigger_relocate) && own_trigger &&
          !free.empty()) {
        const Fragment to = take_free();
        SetSpan(doc, trigger, {to});
        log(EditKind::kTriggerRelocate, id, -1,
            fmt::format("{} {}", to.start, to.end));
      } else if (rng.Bernoulli(rates.trigger_shift) && own_trigger) {
        int64_t shortest = INT64_MAX;
        for (const auto &f : trigger.span.fragments()) {
          shortest = std::min(shortest, f.size());
        }
        const int64_t window = std::min<int64_t>(shortest - 1, 4);
        if (window >= 1) {
          int64_t d = rng.Between(1, window);
          if (rng.Bernoulli(0.5)) d = -d;
          if (trigger.span.start() + d < 0 ||
              trigger.span.end() + d > doc.text.length()) {
            d = -d;
          }
          std::vector<Fragment> moved = trigger.span.fragments();
          for (auto &f : moved) {
            f.start += d;
            f.end += d;
          }
          SetSpan(doc, trigger, std::move(moved));
          log(EditKind::kTriggerShift, id, -1, fmt::format("{:+d}", d));
        }
      }

      for (size_t i = 0; i < ev.arguments.size(); ++i) {
        const std::string &target = ev.arguments[i].target;
        if (refs[target] != 1) continue;
        TextBound &tb = doc.text_bounds.at(target);
        const int arg_index = static_cast<int>(i);
        std::vector<Fragment> fragments = tb.span.fragments();
        if (rng.Bernoulli(rates.span_widen)) {
          if (fragments.back().end < doc.text.length()) {
            ++fragments.back().end;
            SetSpan(doc, tb, std::move(fragments));
            log(EditKind::kSpanWiden, id, arg_index, "");
          }
        } else if (rng.Bernoulli(rates.span_shrink)) {
          if (fragments.back().size() > 1) {
            --fragments.back().end;
            SetSpan(doc, tb, std::move(fragments));
            log(EditKind::kSpanShrink, id, arg_index, "");
          }
        }
        const ArgumentSpec *spec = schema.FindArgument(ev.event_type, tb.label);
        if (spec == nullptr || !spec->labeled() || spec->subtypes.size() < 2) {
          continue;
        }
        if (!rng.Bernoulli(rates.subtype_flip)) continue;
        const std::string &holder = on_event ? id : tb.id;
        for (auto &[aid, attr] : doc.attributes) {
          if (attr.target != holder || attr.name != spec->attribute_name) {
            continue;
          }
          std::vector<std::string> others;
          for (const auto &s : spec->subtypes) {
            if (s != attr.value) others.push_back(s);
          }
          const std::string next = rng.Pick(others);
          log(EditKind::kSubtypeFlip, id, arg_index,
              fmt::format("{}->{}", attr.value, next));
          attr.value = next;
          break;
        }
      }
    }

    if (rates.event_insert > 0 && !schema.events().empty()) {
      int max_t = 0, max_e = 0, max_a = 0;
      NumericSuffixMax(doc, 'T', &max_t);
      NumericSuffixMax(doc, 'E', &max_e);
      NumericSuffixMax(doc, 'A', &max_a);
      for (const Fragment &token : std::vector<Fragment>(free)) {
        if (!rng.Bernoulli(rates.event_insert)) continue;
        const EventSpec &spec = rng.Pick(schema.events());
        EventAnnotation ev;
        ev.id = fmt::format("E{}", ++max_e);
        ev.event_type = spec.event_type;
        TextBound trigger{fmt::format("T{}", ++max_t), spec.event_type, {}, ""};
        SetSpan(doc, trigger, {token});
        ev.trigger = trigger.id;
        doc.text_bounds.emplace(trigger.id, std::move(trigger));
        for (const auto &arg : spec.arguments) {
          if (!arg.required) continue;
          TextBound tb{fmt::format("T{}", ++max_t), arg.argument_type, {}, ""};
          SetSpan(doc, tb, {token});
          if (arg.labeled()) {
            AttributeAnnotation attr{fmt::format("A{}", ++max_a),
                                     arg.attribute_name,
                                     on_event ? ev.id : tb.id,
                                     rng.Pick(arg.subtypes)};
            doc.attributes.emplace(attr.id, std::move(attr));
          }
          ev.arguments.push_back({arg.role, tb.id});
          doc.text_bounds.emplace(tb.id, std::move(tb));
        }
        log(EditKind::kEventInsert, ev.id, -1, spec.event_type);
        doc.events.emplace(ev.id, std::move(ev));
      }
    }

    // Drop text-bounds orphaned by event drops, with their attributes.
    std::set<std::string> live;
    for (const auto &[id, ev] : doc.events) {
      live.insert(ev.trigger);
      for (const auto &arg : ev.arguments) live.insert(arg.target);
    }
    for (auto it = doc.text_bounds.begin(); it != doc.text_bounds.end();) {
      if (refs.count(it->first) > 0 && live.count(it->first) == 0) {
        it = doc.text_bounds.erase(it);
      } else {
        ++it;
      }
    }
    for (auto it = doc.attributes.begin(); it != doc.attributes.end();) {
      const std::string &t = it->second.target;
      if (doc.text_bounds.count(t) == 0 && doc.events.count(t) == 0) {
        it = doc.attributes.erase(it);
      } else {
        ++it;
      }
    }
    result.corpus.Add(std::move(doc));
  }
  return result;
}

ScoreCounts ExpectedCounts(const Corpus &gold, const PerturbResult &perturbed,
                           const AnnotationSchema &schema) {
  // (doc, event) -> edits on it
  std::map<std::pair<std::string, std::string>, std::vector<const Edit *>>
      edits;
  for (const Edit &e : perturbed.edits) {
    edits[{e.doc_id, e.event_id}].push_back(&e);
  }
  auto has = [](const std::vector<const Edit *> &list, EditKind kind,
                int arg = -1) {
    return std::any_of(list.begin(), list.end(), [&](const Edit *e) {
      return e->kind == kind && (arg < 0 || e->argument_index == arg);
    });
  };
  static const std::vector<const Edit *> kNone;

  ScoreCounts out;
  for (const auto &[doc_id, g] : gold.documents) {
    const Document *p = perturbed.corpus.Find(doc_id);
    if (p == nullptr) {
      throw std::invalid_argument(
          fmt::format("perturbed corpus lacks document '{}'", doc_id));
    }
    for (const auto &[id, ev] : g.events) {
      if (!ev.has_trigger()) continue;
      auto it = edits.find({doc_id, id});
      const auto &list = it == edits.end() ? kNone : it->second;
      const auto gold_keys = ArgumentKeys(g, ev, schema);
      const PhenomenonKey trigger = PhenomenonKey::Trigger(ev.event_type);
      if (has(list, EditKind::kEventDrop)) {
        out.AddFn(trigger);
        for (const auto &k : gold_keys) out.AddFn(k);
        continue;
      }
      const EventAnnotation &pe = p->events.at(id);
      const auto pred_keys = ArgumentKeys(*p, pe, schema);
      if (has(list, EditKind::kTriggerRelocate)) {
        out.AddFn(trigger);
        for (const auto &k : gold_keys) out.AddFn(k);
        out.AddFp(trigger);
        for (const auto &k : pred_keys) out.AddFp(k);
        continue;
      }
      out.AddTp(trigger);
      for (size_t i = 0; i < gold_keys.size(); ++i) {
        const int arg = static_cast<int>(i);
        const bool changed =
            gold_keys[i].kind == PhenomenonKind::kLabeledArgument
                ? has(list, EditKind::kSubtypeFlip, arg)
                : has(list, EditKind::kSpanWiden, arg) ||
                      has(list, EditKind::kSpanShrink, arg);
        if (changed) {
          out.AddFn(gold_keys[i]);
          out.AddFp(pred_keys[i]);
        } else {
          out.AddTp(gold_keys[i]);
        }
      }
    }
  }
  for (const Edit &e : perturbed.edits) {
    if (e.kind != EditKind::kEventInsert) continue;
    const Document &p = *perturbed.corpus.Find(e.doc_id);
    const EventAnnotation &ev = p.events.at(e.event_id);
    out.AddFp(PhenomenonKey::Trigger(ev.event_type));
    for (const auto &k : ArgumentKeys(p, ev, schema)) out.AddFp(k);
  }
  return out;
}

namespace {

bool FragmentsOverlap(const Span &a, const Span &b) {
  for (const Fragment &x : a.fragments()) {
    for (const Fragment &y : b.fragments()) {
      if (x.start < y.end && y.start < x.end) return true;
    }
  }
  return false;
}

std::map<std::string, std::vector<Span>> TriggersByType(const Document &doc) {
  std::map<std::string, std::vector<Span>> out;
  for (const auto &[id, ev] : doc.events) {
    if (!ev.has_trigger()) continue;
    out[ev.event_type].push_back(doc.text_bounds.at(ev.trigger).span);
  }
  return out;
}

}  // namespace

size_t OracleAlign(const Document &gold, const Document &pred) {
  const auto g = TriggersByType(gold);
  const auto p = TriggersByType(pred);
  size_t total = 0;
  for (const auto &[type, gs] : g) {
    auto pit = p.find(type);
    if (pit == p.end()) continue;
    const auto &ps = pit->second;
    if (gs.size() > kOracleMaxEventsPerType ||
        ps.size() > kOracleMaxEventsPerType) {
      throw std::invalid_argument(
          fmt::format("more than {} '{}' events", kOracleMaxEventsPerType,
                      type));
    }
    const size_t full = size_t{1} << ps.size();
    // best[mask] after processing a prefix of gold events.
    std::vector<int> best(full, -1);
    best[0] = 0;
    for (const Span &gspan : gs) {
      std::vector<int> next = best;
      for (size_t mask = 0; mask < full; ++mask) {
        if (best[mask] < 0) continue;
        for (size_t j = 0; j < ps.size(); ++j) {
          if ((mask >> j) & 1 || !FragmentsOverlap(gspan, ps[j])) continue;
          const size_t m = mask | (size_t{1} << j);
          next[m] = std::max(next[m], best[mask] + 1);
        }
      }
      best = std::move(next);
    }
    total += static_cast<size_t>(*std::max_element(best.begin(), best.end()));
  }
  return total;
}

std::pair<Document, Document> RandomAlignmentInstance(
    Rng &rng, const AnnotationSchema &schema, int max_events_per_type,
    const std::string &doc_id) {
  constexpr int64_t kLength = 400;
  Document gold;
  gold.doc_id = doc_id;
  gold.text = NoteText(std::string(kLength, 'x'));
  Document pred = gold;

  int gt = 0, ge = 0, pt = 0, pe = 0;
  auto add = [](Document &doc, int &t, int &e, const std::string &type,
                int64_t start, int64_t end) {
    TextBound tb;
    tb.id = fmt::format("T{}", ++t);
    tb.label = type;
    tb.span = Span::Single(start, end);
    tb.covered_text = CoveredText(doc.text, tb.span);
    EventAnnotation ev;
    ev.id = fmt::format("E{}", ++e);
    ev.event_type = type;
    ev.trigger = tb.id;
    doc.text_bounds.emplace(tb.id, std::move(tb));
    doc.events.emplace(ev.id, std::move(ev));
  };

  for (const auto &spec : schema.events()) {
    const int64_t n = rng.Between(0, max_events_per_type);
    std::vector<Fragment> golds;
    int64_t cursor = 0;
    for (int64_t i = 0; i < n; ++i) {
      const int64_t start = cursor + rng.Between(0, 6);
      const int64_t end = start + rng.Between(1, 8);
      if (end > kLength) break;
      golds.push_back({start, end});
      cursor = end;
    }
    std::vector<Fragment> preds;
    for (const Fragment &f : golds) {
      if (!rng.Bernoulli(0.85)) continue;
      int64_t s = std::clamp<int64_t>(f.start + rng.Between(-3, 3), 0,
                                      kLength - 1);
      int64_t e = std::clamp<int64_t>(f.end + rng.Between(-3, 3), s + 1,
                                      kLength);
      preds.push_back({s, e});
    }
    const int64_t strays = rng.Between(0, 2);
    for (int64_t i = 0; i < strays; ++i) {
      const int64_t s = rng.Between(0, kLength - 2);
      preds.push_back({s, std::min(kLength, s + rng.Between(1, 8))});
    }
    while (preds.size() > static_cast<size_t>(max_events_per_type)) {
      preds.erase(preds.begin() +
                  static_cast<std::ptrdiff_t>(rng.Below(preds.size())));
    }
    for (size_t i = preds.size(); i > 1; --i) {
      std::swap(preds[i - 1], preds[rng.Below(i)]);
    }
    for (const Fragment &f : golds) add(gold, gt, ge, spec.event_type, f.start, f.end);
    for (const Fragment &f : preds) add(pred, pt, pe, spec.event_type, f.start, f.end);
  }
  return {std::move(gold), std::move(pred)};
}

}  // namespace bratscore::testkit
