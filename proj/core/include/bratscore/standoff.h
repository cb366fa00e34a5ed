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

// Typed model of BRAT standoff annotations (.ann) over their note text (.txt).
//
// Only text-bound (T), event (E) and attribute (A) lines carry meaning here.
// Relation (R), normalization (N) and comment (#) lines are dropped with a
// warning in lenient mode and rejected in strict mode.
//
// Offsets are character (Unicode scalar value) offsets with exclusive ends.
// A span may be discontinuous: "Type 4 8;15 21" has two fragments and its
// covered text is the fragment texts joined by one space.

#ifndef BRATSCORE_STANDOFF_H_
#define BRATSCORE_STANDOFF_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bratscore/status.h"
#include "bratscore/text.h"

namespace bratscore {

struct Fragment {
  int64_t start = 0;
  int64_t end = 0;

  int64_t size() const { return end - start; }
  friend auto operator<=>(const Fragment &, const Fragment &) = default;
};

// Ordered, non-overlapping fragments. Construct through Span::Make to get
// the invariants checked.
class Span {
 public:
  Span() = default;

  // Throws std::invalid_argument if fragments are empty, reversed, empty in
  // extent, unsorted or overlapping.
  static Span Make(std::vector<Fragment> fragments);
  static Span Single(int64_t start, int64_t end) {
    return Make({{start, end}});
  }

  const std::vector<Fragment> &fragments() const { return fragments_; }
  int64_t start() const { return fragments_.front().start; }
  int64_t end() const { return fragments_.back().end; }
  bool discontinuous() const { return fragments_.size() > 1; }

  // True if some fragment of this span shares at least one character with
  // some fragment of `other`.
  bool Overlaps(const Span &other) const;

  friend auto operator<=>(const Span &, const Span &) = default;

 private:
  std::vector<Fragment> fragments_;
};

// Orders annotation ids naturally: "T2" < "T10" < "T10a". Ids sort by their
// non-numeric prefix first.
struct IdLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

struct TextBound {
  std::string id;
  std::string label;
  Span span;
  std::string covered_text;

  friend bool operator==(const TextBound &, const TextBound &) = default;
};

struct EventArgument {
  std::string role;  // numeric suffix stripped: "Status2" -> "Status"
  std::string target;  // TextBound id

  friend bool operator==(const EventArgument &,
                         const EventArgument &) = default;
};

struct EventAnnotation {
  std::string id;
  std::string event_type;
  // Empty when the source line had no trigger reference. Such events only
  // survive lenient parsing and are reported by schema validation.
  std::string trigger;
  std::vector<EventArgument> arguments;

  bool has_trigger() const { return !trigger.empty(); }
  friend bool operator==(const EventAnnotation &,
                         const EventAnnotation &) = default;
};

struct AttributeAnnotation {
  std::string id;
  std::string name;
  std::string target;  // TextBound or event id
  std::string value;   // empty for binary attributes

  friend bool operator==(const AttributeAnnotation &,
                         const AttributeAnnotation &) = default;
};

enum class Source { kMimic, kUw, kOther };
enum class Split { kTrain, kDev, kTest, kUnknown };

std::string_view SourceName(Source source);
std::string_view SplitName(Split split);
std::optional<Source> ParseSource(std::string_view name);
std::optional<Split> ParseSplit(std::string_view name);

struct DocumentMetadata {
  Source source = Source::kOther;
  Split split = Split::kUnknown;

  friend auto operator<=>(const DocumentMetadata &,
                          const DocumentMetadata &) = default;
};

template <typename T>
using IdMap = std::map<std::string, T, IdLess>;

struct Document {
  std::string doc_id;
  NoteText text;
  IdMap<TextBound> text_bounds;
  IdMap<EventAnnotation> events;
  IdMap<AttributeAnnotation> attributes;
  DocumentMetadata metadata;

  const TextBound *FindTextBound(std::string_view id) const;
  const EventAnnotation *FindEvent(std::string_view id) const;

  // Value of attribute `name` on `target`, if present.
  const AttributeAnnotation *FindAttribute(std::string_view target,
                                           std::string_view name) const;

  friend bool operator==(const Document &, const Document &) = default;
};

struct Corpus {
  std::map<std::string, Document> documents;

  size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  const Document *Find(std::string_view doc_id) const;

  // Throws DataError on duplicate doc_id.
  void Add(Document doc);

  friend bool operator==(const Corpus &, const Corpus &) = default;
};

struct ParseOptions {
  bool strict = false;
  // Reported in diagnostics and errors; defaults to the doc id.
  std::string source_name;
};

// Parses one .ann file against its note text. Throws ParseError on malformed
// lines, out-of-range offsets, dangling references and duplicate ids (both
// modes) and on covered-text mismatches, unsupported line kinds and
// trigger-less events (strict mode). In lenient mode those three are
// reported through `warnings` instead; a mismatched covered text is replaced
// by the text recomputed from the note.
Document ParseDocument(std::string_view ann_text, std::string doc_text,
                       std::string doc_id, const ParseOptions &options = {},
                       Diagnostics *warnings = nullptr);

// Emits T lines, then E lines, then A lines, each in natural id order.
// Repeated roles within an event get BRAT numeric suffixes (Status, Status2).
std::string SerializeDocument(const Document &doc);

// Covered text for `span` per BRAT: fragment texts joined by one space, with
// tabs and line breaks folded to spaces so the text fits on one .ann line.
std::string CoveredText(const NoteText &text, const Span &span);

// Role with its numeric suffix removed ("Status2" -> "Status").
std::string StripRoleSuffix(std::string_view role);

// Maps doc ids to partition metadata. Rules are doc-id prefixes; the longest
// matching prefix wins. Documents matching no rule fall back to any path
// component named mimic/uw and train/dev/test.
class MetadataRules {
 public:
  MetadataRules() = default;

  // Delimited text, one rule per line: <doc-id prefix> <source> <split>,
  // separated by tabs or commas. Blank lines and '#' comments are skipped.
  static MetadataRules ParseManifest(std::string_view text,
                                     const std::string &source_name);
  static MetadataRules LoadManifest(const std::filesystem::path &path);

  void AddRule(std::string prefix, DocumentMetadata metadata);
  DocumentMetadata Resolve(std::string_view doc_id) const;

 private:
  std::vector<std::pair<std::string, DocumentMetadata>> rules_;
};

struct LoadOptions {
  ParseOptions parse;
  MetadataRules metadata;
};

// Loads every <id>.txt / <id>.ann pair under `directory` (recursively). The
// doc id is the path relative to the directory without extension, using '/'
// separators, so a flat directory yields plain file stems. A .txt without a
// .ann is a document with no annotations; a .ann without a .txt is an error.
Corpus LoadCorpus(const std::filesystem::path &directory,
                  const LoadOptions &options = {},
                  Diagnostics *warnings = nullptr);

// Writes <dir>/<doc_id>.txt and .ann for every document, creating
// subdirectories as needed.
void WriteCorpus(const Corpus &corpus, const std::filesystem::path &directory);

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, std::string_view contents);

}  // namespace bratscore

#endif  // BRATSCORE_STANDOFF_H_
