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

#include <sstream>
#include <string>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "bratscore/analytics.h"
#include "bratscore/schema.h"
#include "bratscore/testkit.h"
#include "json.hpp"
#include "test_util.h"

namespace bratscore {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

MetricReport SampleReport() {
  ScoreCounts counts;
  counts.AddTp(PhenomenonKey::Trigger("LivingStatus"), 2);
  counts.AddFn(PhenomenonKey::Trigger("LivingStatus"), 1);
  counts.AddTp(PhenomenonKey::Labeled("LivingStatus", "TypeLiving", "alone"));
  counts.AddFp(PhenomenonKey::Labeled("LivingStatus", "TypeLiving", "homeless"));
  return ComputeMetricReport(counts);
}

TEST(ReportFormatTest, NamesAndAliases) {
  EXPECT_EQ(ParseReportFormat("delimited"), ReportFormat::kDelimited);
  EXPECT_EQ(ParseReportFormat("csv"), ReportFormat::kDelimited);
  EXPECT_EQ(ParseReportFormat("structured"), ReportFormat::kStructured);
  EXPECT_EQ(ParseReportFormat("json"), ReportFormat::kStructured);
  EXPECT_EQ(ParseReportFormat("xml"), std::nullopt);
}

TEST(FormatFixedTest, RoundsAndNormalizesNegativeZero) {
  EXPECT_EQ(FormatFixed(2.0 / 3.0), "0.666667");
  EXPECT_EQ(FormatFixed(1.0), "1.000000");
  EXPECT_EQ(FormatFixed(-0.0), "0.000000");
  EXPECT_EQ(FormatFixed(-1e-9), "0.000000");
  EXPECT_EQ(FormatFixed(0.125, 2), "0.12");
}

TEST(WriteMetricReportTest, DelimitedLayout) {
  std::ostringstream out;
  WriteMetricReport(out, SampleReport(), ShacSchema(), ReportFormat::kDelimited);
  const auto lines = Lines(out.str());
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[0],
            "level,kind,event_type,argument_type,subtype,tp,fn,fp,precision,"
            "recall,f1");
  EXPECT_EQ(lines[1],
            "key,trigger,Living Status,,,2,1,0,1.000000,0.666667,0.800000");
  EXPECT_EQ(lines.back(), "overall,,,,,3,1,1,0.750000,0.750000,0.750000");
  EXPECT_THAT(out.str(),
              HasSubstr("key,labeled,Living Status,Type Living,homeless,0,0,1,"
                        "0.000000,0.000000,0.000000\n"));
}

TEST(WriteMetricReportTest, StructuredMatchesDelimited) {
  std::ostringstream csv, json_text;
  WriteMetricReport(csv, SampleReport(), ShacSchema(), ReportFormat::kDelimited);
  WriteMetricReport(json_text, SampleReport(), ShacSchema(),
                    ReportFormat::kStructured);
  const auto doc = nlohmann::json::parse(json_text.str());
  EXPECT_EQ(doc["schema_version"], "shac-2022");
  const auto lines = Lines(csv.str());
  // Same rows, overall included; the delimited form adds a header line.
  EXPECT_EQ(doc["rows"].size(), lines.size() - 1);
  EXPECT_EQ(doc["rows"].back()["level"], "overall");
  EXPECT_EQ(doc["overall"]["tp"], 3);
  EXPECT_DOUBLE_EQ(doc["overall"]["f1"].get<double>(), 0.75);
  EXPECT_DOUBLE_EQ(doc["rows"][0]["recall"].get<double>(), 0.666667);
}

TEST(WriteMetricReportTest, QuotesFieldsWhenNeeded) {
  const AnnotationSchema schema = LoadSchema(R"({
    "version": "v", "events": [ { "type": "Drug",
      "display": "Drug, illicit", "arguments": [] } ] })");
  ScoreCounts counts;
  counts.AddTp(PhenomenonKey::Trigger("Drug"));
  std::ostringstream out;
  WriteMetricReport(out, ComputeMetricReport(counts), schema,
                    ReportFormat::kDelimited);
  EXPECT_THAT(out.str(), HasSubstr("key,trigger,\"Drug, illicit\",,,1,0,0"));
}

TEST(WriteMetricReportTest, Deterministic) {
  testkit::GeneratorConfig config;
  config.seed = 2;
  const Corpus gold = testkit::GenerateGold(config, ShacSchema());
  testkit::PerturbationRates rates;
  rates.subtype_flip = 0.3;
  const Corpus pred = testkit::Perturb(gold, ShacSchema(), rates, 3).corpus;
  std::string first;
  for (int workers : {1, 4}) {
    const CorpusScore score = ScoreCorpus(gold, pred, ShacSchema(), {workers});
    std::ostringstream out;
    WriteMetricReport(out, score.report, ShacSchema(),
                      ReportFormat::kStructured);
    if (first.empty()) {
      first = out.str();
    } else {
      EXPECT_EQ(out.str(), first);
    }
  }
}

TEST(WriteBootstrapResultTest, DelimitedHeaderCarriesSeed) {
  BootstrapResult r;
  r.f1_a = 0.9;
  r.f1_b = 0.8;
  r.observed_delta = 0.1;
  r.p_numerator = 2;
  r.p_denominator = 10001;
  r.p_value = 2.0 / 10001;
  r.repetitions = 10000;
  r.seed = 42;
  r.alpha = 0.05;
  r.significant = true;
  std::ostringstream out;
  WriteBootstrapResult(out, r, ReportFormat::kDelimited);
  const auto lines = Lines(out.str());
  EXPECT_EQ(lines[0], "# seed=42 repetitions=10000 alpha=0.05");
  EXPECT_EQ(lines[1], "key,value");
  EXPECT_THAT(out.str(), HasSubstr("p_value,0.000200\n"));
  EXPECT_THAT(out.str(), HasSubstr("p_value_unclamped,2/10001\n"));
  EXPECT_THAT(out.str(), HasSubstr("verdict,statistically different\n"));
  EXPECT_EQ(Verdict(r), "statistically different");
  r.significant = false;
  EXPECT_EQ(Verdict(r), "not statistically different");

  std::ostringstream json_text;
  WriteBootstrapResult(json_text, r, ReportFormat::kStructured);
  const auto doc = nlohmann::json::parse(json_text.str());
  EXPECT_EQ(doc["seed"], 42);
  EXPECT_EQ(doc["repetitions"], 10000);
}

TEST(WriteCorpusStatsTest, FullPrecisionAverages) {
  Corpus corpus;
  for (int i = 0; i < 3; ++i) {
    Document doc = test::Doc(test::kTwoDrugText,
                             i == 0 ? test::kTwoDrugAnnA : "",
                             "n" + std::to_string(i));
    doc.metadata = {Source::kUw, Split::kDev};
    corpus.Add(doc);
  }
  const CorpusStats stats = ComputeCorpusStats(corpus, ShacSchema());
  std::ostringstream out;
  WriteCorpusStats(out, stats, ShacSchema(), ReportFormat::kDelimited);
  EXPECT_THAT(out.str(), StartsWith("section,source,split,event_type,"
                                    "argument_type,subtype,count,"
                                    "avg_per_note\n"));
  EXPECT_THAT(out.str(), HasSubstr("notes,uw,dev,,,,3,\n"));
  EXPECT_THAT(out.str(), HasSubstr("events,,,Drug,,,2,0.6666666666666666\n"));

  std::ostringstream table;
  WriteCorpusStatsTable(table, stats, ShacSchema());
  EXPECT_THAT(table.str(), HasSubstr("0.67"));
}

TEST(WritePlotDataTest, SeriesPerFigure) {
  const Document doc = test::Doc(test::kTwoDrugText, test::kTwoDrugAnnA);
  const Corpus corpus = test::CorpusOf({doc});
  const CorpusScore score = ScoreCorpus(corpus, corpus, ShacSchema());
  std::ostringstream out;
  WritePlotData(out, score.report, SubtypeBreakdown(score, 1),
                DensityBreakdown(score, corpus), ShacSchema());
  const auto plot = nlohmann::json::parse(out.str());
  EXPECT_EQ(plot["event_type"]["x"], nlohmann::json::array({"Drug"}));
  EXPECT_EQ(plot["event_type"]["f1"][0], 1.0);
  EXPECT_TRUE(plot.contains("subtype"));
  EXPECT_TRUE(plot.contains("density"));
}

}  // namespace
}  // namespace bratscore
