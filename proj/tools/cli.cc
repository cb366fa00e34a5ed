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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "bratscore/analytics.h"
#include "bratscore/report.h"
#include "bratscore/schema.h"
#include "bratscore/scoring.h"
#include "bratscore/significance.h"
#include "bratscore/standoff.h"
#include "bratscore/status.h"
#include "bratscore/testkit.h"
#include "json.hpp"

namespace bratscore::cli {
namespace {

namespace fs = std::filesystem;

enum class LogLevel { kError, kWarning, kInfo };

struct CommonFlags {
  std::string schema;
  std::string output;
  std::string format = "delimited";
  std::string manifest;
  std::string log_level = "warning";
  bool strict = false;
  bool stamp = false;
  int workers = 0;
};

struct Context {
  std::ostream &out;
  std::ostream &err;
  const CommonFlags &flags;

  LogLevel level() const {
    if (flags.log_level == "error") return LogLevel::kError;
    if (flags.log_level == "info") return LogLevel::kInfo;
    return LogLevel::kWarning;
  }
  void Info(const std::string &message) const {
    if (level() >= LogLevel::kInfo) err << "info: " << message << '\n';
  }
  void Warn(const Diagnostics &warnings) const {
    if (level() < LogLevel::kWarning) return;
    for (const auto &d : warnings) {
      err << "warning: " << FormatDiagnostic(d) << '\n';
    }
  }
  int Workers() const {
    if (flags.workers > 0) return flags.workers;
    return static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()));
  }
  ReportFormat Format() const { return *ParseReportFormat(flags.format); }
};

AnnotationSchema ResolveSchema(const Context &ctx) {
  std::string path = ctx.flags.schema;
  if (path.empty()) {
    if (const char *env = std::getenv(kSchemaEnvVar); env && *env) path = env;
  }
  if (path.empty()) return ShacSchema();
  ctx.Info(fmt::format("schema: {}", path));
  return LoadSchemaFile(path);
}

Corpus Load(const Context &ctx, const std::string &dir) {
  if (!fs::is_directory(dir)) {
    throw IoError(fmt::format("{}: not a directory", dir));
  }
  LoadOptions options;
  options.parse.strict = ctx.flags.strict;
  if (!ctx.flags.manifest.empty()) {
    options.metadata = MetadataRules::LoadManifest(ctx.flags.manifest);
  }
  Diagnostics warnings;
  Corpus corpus = LoadCorpus(dir, options, &warnings);
  ctx.Warn(warnings);
  ctx.Info(fmt::format("{}: {} notes", dir, corpus.size()));
  return corpus;
}

std::string Timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(
      std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

// Writes a report produced by `write` to `path` (or `fallback` when the path
// is empty), adding a generation time when --stamp is set.
void Emit(const Context &ctx, const std::string &path, std::ostream *fallback,
          ReportFormat format,
          const std::function<void(std::ostream &)> &write) {
  std::ostringstream body;
  write(body);
  std::string text = body.str();
  if (ctx.flags.stamp) {
    if (format == ReportFormat::kStructured) {
      auto doc = nlohmann::ordered_json::parse(text);
      doc["generated_at"] = Timestamp();
      text = doc.dump(2) + "\n";
    } else {
      text = fmt::format("# generated_at={}\n{}", Timestamp(), text);
    }
  }
  if (path.empty()) {
    if (fallback != nullptr) *fallback << text;
    return;
  }
  WriteFile(path, text);
  ctx.Info(fmt::format("wrote {}", path));
}

void AddCommonFlags(CLI::App &cmd, CommonFlags &flags, bool with_format) {
  cmd.add_option("--schema", flags.schema,
                 fmt::format("Schema config (default: ${} or the built-in "
                             "SHAC schema)",
                             kSchemaEnvVar));
  cmd.add_flag("--strict", flags.strict,
               "Treat recoverable annotation problems as errors");
  cmd.add_option("--manifest", flags.manifest,
                 "Doc-id prefix to source/split mapping");
  cmd.add_option("--log-level", flags.log_level, "error, warning or info")
      ->check(CLI::IsMember({"error", "warning", "info"}));
  cmd.add_option("--workers", flags.workers,
                 "Worker thread cap (default: all cores)")
      ->check(CLI::NonNegativeNumber);
  if (with_format) {
    cmd.add_option("--format", flags.format,
                   "delimited (csv) or structured (json)")
        ->check(CLI::IsMember({"delimited", "structured", "csv", "json"}));
    cmd.add_flag("--stamp", flags.stamp,
                 "Add the generation time to written reports");
  }
}

struct ScoreArgs {
  std::string gold, pred, subtype_report, density_report, plot_data;
};

int CmdScore(const Context &ctx, const ScoreArgs &args) {
  const AnnotationSchema schema = ResolveSchema(ctx);
  const Corpus gold = Load(ctx, args.gold);
  const Corpus pred = Load(ctx, args.pred);
  Diagnostics warnings;
  const CorpusScore score =
      ScoreCorpus(gold, pred, schema, {ctx.Workers()}, &warnings);
  ctx.Warn(warnings);

  const Metrics &m = score.report.overall;
  ctx.out << fmt::format("overall P={} R={} F1={} tp={} fn={} fp={}\n",
                         FormatFixed(m.precision), FormatFixed(m.recall),
                         FormatFixed(m.f1), m.counts.tp, m.counts.fn,
                         m.counts.fp);
  const ReportFormat format = ctx.Format();
  Emit(ctx, ctx.flags.output, &ctx.out, format, [&](std::ostream &os) {
    WriteMetricReport(os, score.report, schema, format);
  });
  const auto note_count = static_cast<int64_t>(gold.size());
  std::vector<SubtypeRow> subtypes;
  std::vector<DensityRow> density;
  if (!args.subtype_report.empty() || !args.plot_data.empty()) {
    subtypes = SubtypeBreakdown(score, note_count);
  }
  if (!args.density_report.empty() || !args.plot_data.empty()) {
    density = DensityBreakdown(score, gold);
  }
  if (!args.subtype_report.empty()) {
    Emit(ctx, args.subtype_report, nullptr, format, [&](std::ostream &os) {
      WriteSubtypeReport(os, subtypes, schema, format);
    });
  }
  if (!args.density_report.empty()) {
    Emit(ctx, args.density_report, nullptr, format, [&](std::ostream &os) {
      WriteDensityReport(os, density, schema, format);
    });
  }
  if (!args.plot_data.empty()) {
    Emit(ctx, args.plot_data, nullptr, ReportFormat::kStructured,
         [&](std::ostream &os) {
           WritePlotData(os, score.report, subtypes, density, schema);
         });
  }
  return kExitOk;
}

struct CompareArgs {
  std::string gold, pred_a, pred_b, dump_deltas;
  BootstrapConfig bootstrap;
};

int CmdCompare(const Context &ctx, CompareArgs args) {
  const AnnotationSchema schema = ResolveSchema(ctx);
  const Corpus gold = Load(ctx, args.gold);
  const Corpus pred_a = Load(ctx, args.pred_a);
  const Corpus pred_b = Load(ctx, args.pred_b);
  Diagnostics warnings;
  const ScoreOptions options{ctx.Workers()};
  const CorpusScore a = ScoreCorpus(gold, pred_a, schema, options, &warnings);
  const CorpusScore b = ScoreCorpus(gold, pred_b, schema, options, &warnings);
  ctx.Warn(warnings);

  args.bootstrap.workers = ctx.Workers();
  args.bootstrap.keep_deltas = !args.dump_deltas.empty();
  const BootstrapResult result =
      PairedBootstrap(CollectPairedCounts(a, b), args.bootstrap);

  ctx.out << fmt::format("system A F1={}\n", FormatFixed(result.f1_a))
          << fmt::format("system B F1={}\n", FormatFixed(result.f1_b))
          << fmt::format("delta={}\n", FormatFixed(result.observed_delta))
          << fmt::format("p={} ({}/{})\n", FormatFixed(result.p_value),
                         result.p_numerator, result.p_denominator)
          << fmt::format("repetitions={} seed={} alpha={}\n",
                         result.repetitions, result.seed, result.alpha)
          << Verdict(result) << '\n';
  const ReportFormat format = ctx.Format();
  Emit(ctx, ctx.flags.output, nullptr, format, [&](std::ostream &os) {
    WriteBootstrapResult(os, result, format);
  });
  if (!args.dump_deltas.empty()) {
    std::string text = fmt::format("# seed={} repetitions={}\n", result.seed,
                                   result.repetitions);
    for (double d : result.deltas) text += fmt::format("{:.17g}\n", d);
    WriteFile(args.dump_deltas, text);
  }
  return kExitOk;
}

int CmdStats(const Context &ctx, const std::string &dir) {
  const AnnotationSchema schema = ResolveSchema(ctx);
  const Corpus corpus = Load(ctx, dir);
  const CorpusStats stats = ComputeCorpusStats(corpus, schema);
  WriteCorpusStatsTable(ctx.out, stats, schema);
  const ReportFormat format = ctx.Format();
  Emit(ctx, ctx.flags.output, nullptr, format, [&](std::ostream &os) {
    WriteCorpusStats(os, stats, schema, format);
  });
  return kExitOk;
}

int CmdValidate(const Context &ctx, const std::string &dir) {
  const AnnotationSchema schema = ResolveSchema(ctx);
  const Corpus corpus = Load(ctx, dir);
  size_t total = 0;
  std::string listing;
  for (const auto &[doc_id, doc] : corpus.documents) {
    for (const Violation &v : ValidateDocument(doc, schema)) {
      listing += fmt::format("{}\t{}\t{}\t{}\n", v.doc_id, v.annotation_id,
                             v.rule, v.message);
      ++total;
    }
  }
  ctx.out << listing;
  ctx.out << fmt::format("{} violation{} in {} notes\n", total,
                         total == 1 ? "" : "s", corpus.size());
  if (!ctx.flags.output.empty()) WriteFile(ctx.flags.output, listing);
  return total == 0 ? kExitOk : kExitDataError;
}

struct GenArgs {
  std::string config;
  std::optional<uint64_t> seed;
};

// Writes <output>/gold, and when any perturbation rate is set also
// <output>/pred and <output>/edits.tsv.
int CmdGen(const Context &ctx, const GenArgs &args) {
  if (ctx.flags.output.empty()) {
    throw CLI::RequiredError("--output");
  }
  const AnnotationSchema schema = ResolveSchema(ctx);
  testkit::GeneratorConfig config =
      testkit::ParseGeneratorConfig(ReadFile(args.config));
  if (args.seed) config.seed = *args.seed;
  const Corpus gold = testkit::GenerateGold(config, schema);
  const fs::path root = ctx.flags.output;
  WriteCorpus(gold, root / "gold");
  ctx.out << fmt::format("seed={} notes={}\n", config.seed, gold.size());
  if (config.perturbation.AllZero()) return kExitOk;

  const auto perturbed =
      testkit::Perturb(gold, schema, config.perturbation, config.seed + 1);
  WriteCorpus(perturbed.corpus, root / "pred");
  std::string log = "doc_id\tkind\tevent_id\targument_index\tdetail\n";
  for (const auto &e : perturbed.edits) {
    log += fmt::format("{}\t{}\t{}\t{}\t{}\n", e.doc_id,
                       testkit::EditKindName(e.kind), e.event_id,
                       e.argument_index, e.detail);
  }
  WriteFile(root / "edits.tsv", log);
  ctx.out << fmt::format("edits={}\n", perturbed.edits.size());
  return kExitOk;
}

}  // namespace

int Run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Scores BRAT standoff event annotations."};
  app.name("bratscore");
  app.require_subcommand(1);
  app.set_version_flag("--version", "bratscore 0.3.0");

  CommonFlags flags;
  ScoreArgs score;
  CompareArgs compare;
  std::string corpus_dir;
  GenArgs gen;

  auto *score_cmd = app.add_subcommand("score", "Score predictions against gold");
  score_cmd->add_option("gold", score.gold, "Gold corpus directory")->required();
  score_cmd->add_option("pred", score.pred, "Prediction corpus directory")
      ->required();
  score_cmd->add_option("--output", flags.output,
                        "Metric report path (default: standard output)");
  score_cmd->add_option("--subtype-report", score.subtype_report,
                        "Per-subtype breakdown path");
  score_cmd->add_option("--density-report", score.density_report,
                        "Per-density breakdown path");
  score_cmd->add_option("--plot-data", score.plot_data,
                        "Plot series (JSON) path");
  AddCommonFlags(*score_cmd, flags, true);

  auto *compare_cmd =
      app.add_subcommand("compare", "Paired bootstrap test between two systems");
  compare_cmd->add_option("gold", compare.gold, "Gold corpus directory")
      ->required();
  compare_cmd->add_option("pred_a", compare.pred_a, "System A predictions")
      ->required();
  compare_cmd->add_option("pred_b", compare.pred_b, "System B predictions")
      ->required();
  compare_cmd->add_option("--output", flags.output, "Bootstrap report path");
  compare_cmd->add_option("--reps", compare.bootstrap.repetitions,
                          "Bootstrap repetitions")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", compare.bootstrap.seed, "Resampling seed")
      ->capture_default_str();
  compare_cmd->add_option("--alpha", compare.bootstrap.alpha,
                          "Significance level")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  compare_cmd->add_option("--dump-deltas", compare.dump_deltas,
                          "Write every repetition's F1 delta here");
  AddCommonFlags(*compare_cmd, flags, true);

  auto *stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("corpus", corpus_dir, "Corpus directory")->required();
  stats_cmd->add_option("--output", flags.output,
                        "Machine-readable statistics path");
  AddCommonFlags(*stats_cmd, flags, true);

  auto *validate_cmd =
      app.add_subcommand("validate", "Check annotations against the schema");
  validate_cmd->add_option("corpus", corpus_dir, "Corpus directory")
      ->required();
  validate_cmd->add_option("--output", flags.output, "Violation listing path");
  AddCommonFlags(*validate_cmd, flags, false);

  auto *gen_cmd = app.add_subcommand("gen", "Write a synthetic fixture");
  gen_cmd->group("");  // hidden
  gen_cmd->add_option("--config", gen.config, "Generator config (JSON)")
      ->required();
  gen_cmd->add_option("--output", flags.output, "Fixture directory");
  gen_cmd->add_option("--seed", gen.seed, "Override the config seed");
  AddCommonFlags(*gen_cmd, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Context ctx{out, err, flags};
  try {
    if (*score_cmd) return CmdScore(ctx, score);
    if (*compare_cmd) return CmdCompare(ctx, compare);
    if (*stats_cmd) return CmdStats(ctx, corpus_dir);
    if (*validate_cmd) return CmdValidate(ctx, corpus_dir);
    if (*gen_cmd) return CmdGen(ctx, gen);
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError &e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace bratscore::cli
