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

#include "bratscore/report.h"

#include <cmath>

#include <fmt/format.h>

#include "json.hpp"

namespace bratscore {
namespace {

using nlohmann::ordered_json;

double Round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0 ? 0.0 : r;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void WriteCsvRow(std::ostream &out, const std::vector<std::string> &fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << CsvField(fields[i]);
  }
  out << '\n';
}

std::vector<std::string> MetricFields(const Metrics &m) {
  return {std::to_string(m.counts.tp), std::to_string(m.counts.fn),
          std::to_string(m.counts.fp), FormatFixed(m.precision),
          FormatFixed(m.recall),       FormatFixed(m.f1)};
}

void AddMetricFields(ordered_json &row, const Metrics &m) {
  row["tp"] = m.counts.tp;
  row["fn"] = m.counts.fn;
  row["fp"] = m.counts.fp;
  row["precision"] = Round6(m.precision);
  row["recall"] = Round6(m.recall);
  row["f1"] = Round6(m.f1);
}

struct MetricRow {
  std::string level;
  std::string kind;
  std::string event_type;
  std::string argument_type;
  std::string subtype;
  Metrics metrics;
};

std::vector<MetricRow> MetricRows(const MetricReport &report,
                                  const AnnotationSchema &schema) {
  auto event = [&](const std::string &e) {
    return e.empty() ? e : schema.EventDisplayName(e);
  };
  auto argument = [&](const std::string &a) {
    return a.empty() ? a : schema.ArgumentDisplayName(a);
  };
  std::vector<MetricRow> rows;
  for (const auto &km : report.per_key) {
    rows.push_back({"key", std::string(PhenomenonKindName(km.key.kind)),
                    event(km.key.event_type), argument(km.key.argument_type),
                    km.key.subtype, km.metrics});
  }
  for (const auto &r : report.by_event_type) {
    rows.push_back({"event", "", event(r.event_type), "", "", r.metrics});
  }
  for (const auto &r : report.by_argument_type) {
    rows.push_back({"argument", "", event(r.event_type),
                    argument(r.argument_type), "", r.metrics});
  }
  for (const auto &r : report.by_subtype) {
    rows.push_back(
        {"subtype", "", "", argument(r.argument_type), r.subtype, r.metrics});
  }
  rows.push_back({"overall", "", "", "", "", report.overall});
  return rows;
}

}  // namespace

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "delimited" || name == "csv") return ReportFormat::kDelimited;
  if (name == "structured" || name == "json") return ReportFormat::kStructured;
  return std::nullopt;
}

std::string FormatFixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

void WriteMetricReport(std::ostream &out, const MetricReport &report,
                       const AnnotationSchema &schema, ReportFormat format) {
  const auto rows = MetricRows(report, schema);
  if (format == ReportFormat::kDelimited) {
    WriteCsvRow(out, {"level", "kind", "event_type", "argument_type",
                      "subtype", "tp", "fn", "fp", "precision", "recall",
                      "f1"});
    for (const auto &r : rows) {
      std::vector<std::string> fields = {r.level, r.kind, r.event_type,
                                         r.argument_type, r.subtype};
      for (auto &f : MetricFields(r.metrics)) fields.push_back(std::move(f));
      WriteCsvRow(out, fields);
    }
    return;
  }
  ordered_json doc;
  doc["schema_version"] = schema.version();
  ordered_json list = ordered_json::array();
  for (const auto &r : rows) {
    ordered_json row;
    row["level"] = r.level;
    row["kind"] = r.kind;
    row["event_type"] = r.event_type;
    row["argument_type"] = r.argument_type;
    row["subtype"] = r.subtype;
    AddMetricFields(row, r.metrics);
    list.push_back(std::move(row));
  }
  doc["rows"] = std::move(list);
  ordered_json overall;
  AddMetricFields(overall, report.overall);
  doc["overall"] = std::move(overall);
  out << doc.dump(2) << '\n';
}

void WriteSubtypeReport(std::ostream &out, const std::vector<SubtypeRow> &rows,
                        const AnnotationSchema &schema, ReportFormat format) {
  if (format == ReportFormat::kDelimited) {
    WriteCsvRow(out, {"event_type", "argument_type", "subtype", "gold_count",
                      "avg_gold_per_note", "tp", "fn", "fp", "precision",
                      "recall", "f1"});
    for (const auto &r : rows) {
      std::vector<std::string> fields = {
          schema.EventDisplayName(r.event_type),
          schema.ArgumentDisplayName(r.argument_type), r.subtype,
          std::to_string(r.gold_count), FormatFixed(r.average_gold_per_note)};
      for (auto &f : MetricFields(r.metrics)) fields.push_back(std::move(f));
      WriteCsvRow(out, fields);
    }
    return;
  }
  ordered_json list = ordered_json::array();
  for (const auto &r : rows) {
    ordered_json row;
    row["event_type"] = schema.EventDisplayName(r.event_type);
    row["argument_type"] = schema.ArgumentDisplayName(r.argument_type);
    row["subtype"] = r.subtype;
    row["gold_count"] = r.gold_count;
    row["avg_gold_per_note"] = Round6(r.average_gold_per_note);
    AddMetricFields(row, r.metrics);
    list.push_back(std::move(row));
  }
  out << ordered_json{{"rows", std::move(list)}}.dump(2) << '\n';
}

void WriteDensityReport(std::ostream &out, const std::vector<DensityRow> &rows,
                        const AnnotationSchema &schema, ReportFormat format) {
  if (format == ReportFormat::kDelimited) {
    WriteCsvRow(out, {"event_type", "bucket", "notes", "gold_events", "tp",
                      "fn", "fp", "precision", "recall", "f1"});
    for (const auto &r : rows) {
      std::vector<std::string> fields = {
          schema.EventDisplayName(r.event_type),
          std::string(DensityBucketLabel(r.bucket)), std::to_string(r.note_count),
          std::to_string(r.gold_events)};
      for (auto &f : MetricFields(r.metrics)) fields.push_back(std::move(f));
      WriteCsvRow(out, fields);
    }
    return;
  }
  ordered_json list = ordered_json::array();
  for (const auto &r : rows) {
    ordered_json row;
    row["event_type"] = schema.EventDisplayName(r.event_type);
    row["bucket"] = DensityBucketLabel(r.bucket);
    row["notes"] = r.note_count;
    row["gold_events"] = r.gold_events;
    AddMetricFields(row, r.metrics);
    list.push_back(std::move(row));
  }
  out << ordered_json{{"rows", std::move(list)}}.dump(2) << '\n';
}

void WriteCorpusStats(std::ostream &out, const CorpusStats &stats,
                      const AnnotationSchema &schema, ReportFormat format) {
  struct Row {
    std::string section, source, split, event_type, argument_type, subtype;
    int64_t count;
    std::optional<double> average;
  };
  std::vector<Row> rows;
  for (const auto &[meta, n] : stats.notes_by_partition) {
    rows.push_back({"notes", std::string(SourceName(meta.source)),
                    std::string(SplitName(meta.split)), "", "", "", n,
                    std::nullopt});
  }
  rows.push_back({"notes_total", "", "", "", "", "", stats.note_count,
                  std::nullopt});
  for (const auto &[type, n] : stats.events_by_type) {
    rows.push_back({"events", "", "", schema.EventDisplayName(type), "", "", n,
                    stats.AverageEventsPerNote(type)});
  }
  for (const auto &[key, n] : stats.subtype_frequency) {
    const double avg = stats.note_count == 0
                           ? 0.0
                           : static_cast<double>(n) /
                                 static_cast<double>(stats.note_count);
    rows.push_back({"subtypes", "", "", schema.EventDisplayName(key.event_type),
                    schema.ArgumentDisplayName(key.argument_type), key.subtype,
                    n, avg});
  }

  if (format == ReportFormat::kDelimited) {
    WriteCsvRow(out, {"section", "source", "split", "event_type",
                      "argument_type", "subtype", "count", "avg_per_note"});
    for (const auto &r : rows) {
      WriteCsvRow(out, {r.section, r.source, r.split, r.event_type,
                        r.argument_type, r.subtype, std::to_string(r.count),
                        r.average ? fmt::format("{}", *r.average) : ""});
    }
    return;
  }
  ordered_json list = ordered_json::array();
  for (const auto &r : rows) {
    ordered_json row;
    row["section"] = r.section;
    row["source"] = r.source;
    row["split"] = r.split;
    row["event_type"] = r.event_type;
    row["argument_type"] = r.argument_type;
    row["subtype"] = r.subtype;
    row["count"] = r.count;
    row["avg_per_note"] = r.average ? ordered_json(*r.average) : ordered_json();
    list.push_back(std::move(row));
  }
  out << ordered_json{{"rows", std::move(list)}}.dump(2) << '\n';
}

void WriteCorpusStatsTable(std::ostream &out, const CorpusStats &stats,
                           const AnnotationSchema &schema) {
  out << fmt::format("{:<8} {:<8} {:>8}\n", "source", "split", "notes");
  for (const auto &[meta, n] : stats.notes_by_partition) {
    out << fmt::format("{:<8} {:<8} {:>8}\n", SourceName(meta.source),
                       SplitName(meta.split), n);
  }
  out << fmt::format("{:<17} {:>8}\n\n", "total", stats.note_count);

  out << fmt::format("{:<16} {:>8} {:>10}\n", "event type", "events",
                     "per note");
  for (const auto &[type, n] : stats.events_by_type) {
    out << fmt::format("{:<16} {:>8} {:>10}\n", schema.EventDisplayName(type),
                       n, FormatFixed(stats.AverageEventsPerNote(type), 2));
  }
  if (stats.subtype_frequency.empty()) return;
  out << '\n'
      << fmt::format("{:<16} {:<16} {:<16} {:>8}\n", "event type",
                     "argument", "subtype", "count");
  for (const auto &[key, n] : stats.subtype_frequency) {
    out << fmt::format("{:<16} {:<16} {:<16} {:>8}\n",
                       schema.EventDisplayName(key.event_type),
                       schema.ArgumentDisplayName(key.argument_type),
                       key.subtype, n);
  }
}

std::string_view Verdict(const BootstrapResult &result) {
  return result.significant ? "statistically different"
                            : "not statistically different";
}

void WriteBootstrapResult(std::ostream &out, const BootstrapResult &result,
                          ReportFormat format) {
  const std::string p_exact =
      fmt::format("{}/{}", result.p_numerator, result.p_denominator);
  if (format == ReportFormat::kDelimited) {
    out << fmt::format("# seed={} repetitions={} alpha={}\n", result.seed,
                       result.repetitions, result.alpha);
    WriteCsvRow(out, {"key", "value"});
    WriteCsvRow(out, {"f1_a", FormatFixed(result.f1_a)});
    WriteCsvRow(out, {"f1_b", FormatFixed(result.f1_b)});
    WriteCsvRow(out, {"observed_delta", FormatFixed(result.observed_delta)});
    WriteCsvRow(out, {"p_value", FormatFixed(result.p_value)});
    WriteCsvRow(out, {"p_value_unclamped", p_exact});
    WriteCsvRow(out, {"deltas_at_or_below_zero",
                      std::to_string(result.count_at_or_below_zero)});
    WriteCsvRow(out, {"deltas_at_or_above_zero",
                      std::to_string(result.count_at_or_above_zero)});
    WriteCsvRow(out, {"repetitions", std::to_string(result.repetitions)});
    WriteCsvRow(out, {"seed", std::to_string(result.seed)});
    WriteCsvRow(out, {"alpha", fmt::format("{}", result.alpha)});
    WriteCsvRow(out, {"significant", result.significant ? "true" : "false"});
    WriteCsvRow(out, {"verdict", std::string(Verdict(result))});
    return;
  }
  ordered_json doc;
  doc["f1_a"] = Round6(result.f1_a);
  doc["f1_b"] = Round6(result.f1_b);
  doc["observed_delta"] = Round6(result.observed_delta);
  doc["p_value"] = Round6(result.p_value);
  doc["p_value_unclamped"] = p_exact;
  doc["deltas_at_or_below_zero"] = result.count_at_or_below_zero;
  doc["deltas_at_or_above_zero"] = result.count_at_or_above_zero;
  doc["repetitions"] = result.repetitions;
  doc["seed"] = result.seed;
  doc["alpha"] = result.alpha;
  doc["significant"] = result.significant;
  doc["verdict"] = Verdict(result);
  out << doc.dump(2) << '\n';
}

void WritePlotData(std::ostream &out, const MetricReport &report,
                   const std::vector<SubtypeRow> &subtypes,
                   const std::vector<DensityRow> &density,
                   const AnnotationSchema &schema) {
  ordered_json doc;
  {
    ordered_json series;
    for (const auto &r : report.by_event_type) {
      series["x"].push_back(schema.EventDisplayName(r.event_type));
      series["precision"].push_back(Round6(r.metrics.precision));
      series["recall"].push_back(Round6(r.metrics.recall));
      series["f1"].push_back(Round6(r.metrics.f1));
    }
    doc["event_type"] = std::move(series);
  }
  {
    ordered_json series;
    for (const auto &r : subtypes) {
      series["x"].push_back(fmt::format(
          "{}/{}/{}", schema.EventDisplayName(r.event_type),
          schema.ArgumentDisplayName(r.argument_type), r.subtype));
      series["f1"].push_back(Round6(r.metrics.f1));
      series["avg_gold_per_note"].push_back(r.average_gold_per_note);
    }
    doc["subtype"] = std::move(series);
  }
  {
    ordered_json by_event = ordered_json::object();
    for (const auto &r : density) {
      auto &series = by_event[schema.EventDisplayName(r.event_type)];
      series["x"].push_back(DensityBucketLabel(r.bucket));
      series["f1"].push_back(Round6(r.metrics.f1));
      series["gold_events"].push_back(r.gold_events);
    }
    doc["density"] = std::move(by_event);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace bratscore
