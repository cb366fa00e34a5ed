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

// Report writers. Two formats share the same rows and column order:
//
//   delimited   CSV with a header line; fields are quoted only when needed
//   structured  JSON object with a "rows" array (and extra summary fields)
//
// Rates are rounded to 6 decimal places in both. Names are rendered with the
// schema's display names. Nothing time-dependent is written.
//
// Metric report columns:
//   level,kind,event_type,argument_type,subtype,tp,fn,fp,precision,recall,f1
// where level is one of key, event, argument, subtype, overall.

#ifndef BRATSCORE_REPORT_H_
#define BRATSCORE_REPORT_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bratscore/analytics.h"
#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/significance.h"

namespace bratscore {

enum class ReportFormat { kDelimited, kStructured };

std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// Fixed-point with `decimals` digits, "-0.000000" normalized to "0.000000".
std::string FormatFixed(double value, int decimals = 6);

void WriteMetricReport(std::ostream &out, const MetricReport &report,
                       const AnnotationSchema &schema, ReportFormat format);

// Columns: event_type,argument_type,subtype,gold_count,avg_gold_per_note,
// tp,fn,fp,precision,recall,f1
void WriteSubtypeReport(std::ostream &out, const std::vector<SubtypeRow> &rows,
                        const AnnotationSchema &schema, ReportFormat format);

// Columns: event_type,bucket,notes,gold_events,tp,fn,fp,precision,recall,f1
void WriteDensityReport(std::ostream &out, const std::vector<DensityRow> &rows,
                        const AnnotationSchema &schema, ReportFormat format);

// Machine-readable corpus statistics, averages at full precision. Columns:
// section,source,split,event_type,argument_type,subtype,count,avg_per_note
void WriteCorpusStats(std::ostream &out, const CorpusStats &stats,
                      const AnnotationSchema &schema, ReportFormat format);

// Human-readable tables, averages to 2 decimals.
void WriteCorpusStatsTable(std::ostream &out, const CorpusStats &stats,
                           const AnnotationSchema &schema);

// Delimited form starts with a "# seed=... repetitions=... alpha=..." line
// followed by key,value lines; structured form is one JSON object.
void WriteBootstrapResult(std::ostream &out, const BootstrapResult &result,
                          ReportFormat format);

// "statistically different" / "not statistically different".
std::string_view Verdict(const BootstrapResult &result);

// x/y series for the per-event-type, per-subtype and per-density figures as
// JSON, for external plotting.
void WritePlotData(std::ostream &out, const MetricReport &report,
                   const std::vector<SubtypeRow> &subtypes,
                   const std::vector<DensityRow> &density,
                   const AnnotationSchema &schema);

}  // namespace bratscore

#endif  // BRATSCORE_REPORT_H_
