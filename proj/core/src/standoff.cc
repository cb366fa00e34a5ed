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

#include "bratscore/standoff.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace bratscore {
namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  return lines;
}

// Splits on runs of spaces.
std::vector<std::string_view> Tokens(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool IsBlank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

bool ParseOffset(std::string_view s, int64_t *out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && *out >= 0;
}

// Splits "Label:Id" at the last colon.
bool SplitPair(std::string_view token, std::string_view *left,
               std::string_view *right) {
  const size_t colon = token.rfind(':');
  if (colon == std::string_view::npos) return false;
  *left = token.substr(0, colon);
  *right = token.substr(colon + 1);
  return true;
}

class Parser {
 public:
  Parser(std::string doc_id, const NoteText &text, const ParseOptions &options,
         Diagnostics *warnings)
      : text_(text),
        options_(options),
        source_(options.source_name.empty() ? doc_id : options.source_name),
        warnings_(warnings) {
    doc_.doc_id = std::move(doc_id);
  }

  Document Run(std::string_view ann_text) {
    const auto lines = SplitLines(ann_text);
    for (size_t i = 0; i < lines.size(); ++i) {
      line_no_ = static_cast<int>(i + 1);
      if (IsBlank(lines[i])) continue;
      ParseLine(lines[i]);
    }
    Resolve();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void Fail(const std::string &message) const {
    throw ParseError(source_, line_no_, message);
  }

  // Error in strict mode, warning in lenient mode.
  void Soft(const std::string &message) const {
    if (options_.strict) Fail(message);
    if (warnings_ != nullptr) {
      warnings_->push_back({source_, line_no_, message});
    }
  }

  void ParseLine(std::string_view line) {
    const size_t tab = line.find('\t');
    const std::string_view id = line.substr(0, tab);
    if (id.empty()) Fail("missing annotation id");
    switch (id.front()) {
      case 'T':
        if (tab == std::string_view::npos) Fail("text-bound line needs tabs");
        ParseTextBound(id, line.substr(tab + 1));
        return;
      case 'E':
        if (tab == std::string_view::npos) Fail("event line needs a tab");
        ParseEvent(id, line.substr(tab + 1));
        return;
      case 'A':
        if (tab == std::string_view::npos) Fail("attribute line needs a tab");
        ParseAttribute(id, line.substr(tab + 1));
        return;
      case 'R':
      case 'N':
      case '#':
      case '*':
      case 'M':
        Soft(fmt::format("unsupported annotation kind '{}' ignored", id));
        return;
      default:
        Fail(fmt::format("unknown annotation id '{}'", id));
    }
  }

  void CheckNewId(std::string_view id) {
    if (!seen_ids_.insert(std::string(id)).second) {
      Fail(fmt::format("duplicate annotation id '{}'", id));
    }
  }

  void ParseTextBound(std::string_view id, std::string_view rest) {
    CheckNewId(id);
    const size_t tab = rest.find('\t');
    const std::string_view head = rest.substr(0, tab);
    const bool has_text = tab != std::string_view::npos;
    const std::string_view text = has_text ? rest.substr(tab + 1) : "";

    const size_t space = head.find(' ');
    if (space == std::string_view::npos || space == 0) {
      Fail(fmt::format("text-bound '{}' needs '<Type> <start> <end>'", id));
    }
    TextBound tb;
    tb.id = std::string(id);
    tb.label = std::string(head.substr(0, space));

    std::vector<Fragment> fragments;
    std::string_view offsets = head.substr(space + 1);
    while (true) {
      const size_t semi = offsets.find(';');
      const auto parts = Tokens(offsets.substr(0, semi));
      Fragment f;
      if (parts.size() != 2 || !ParseOffset(parts[0], &f.start) ||
          !ParseOffset(parts[1], &f.end)) {
        Fail(fmt::format("text-bound '{}' has malformed offsets '{}'", id,
                         head.substr(space + 1)));
      }
      if (f.end > text_.length()) {
        Fail(fmt::format("text-bound '{}' offset {} beyond text length {}", id,
                         f.end, text_.length()));
      }
      fragments.push_back(f);
      if (semi == std::string_view::npos) break;
      offsets = offsets.substr(semi + 1);
    }
    try {
      tb.span = Span::Make(std::move(fragments));
    } catch (const std::invalid_argument &e) {
      Fail(fmt::format("text-bound '{}': {}", id, e.what()));
    }

    tb.covered_text = CoveredText(text_, tb.span);
    if (!has_text || text != tb.covered_text) {
      Soft(fmt::format("text-bound '{}' text \"{}\" does not match note text "
                       "\"{}\"",
                       id, text, tb.covered_text));
    }
    doc_.text_bounds.emplace(tb.id, std::move(tb));
  }

  void ParseEvent(std::string_view id, std::string_view rest) {
    CheckNewId(id);
    const auto tokens = Tokens(rest);
    if (tokens.empty()) Fail(fmt::format("event '{}' has no type", id));

    EventAnnotation ev;
    ev.id = std::string(id);
    std::string_view type = tokens[0];
    std::string_view trigger;
    if (!SplitPair(tokens[0], &type, &trigger)) type = tokens[0];
    if (type.empty()) Fail(fmt::format("event '{}' has no type", id));
    ev.event_type = std::string(type);
    ev.trigger = std::string(trigger);
    if (trigger.empty()) {
      Soft(fmt::format("event '{}' has no trigger", id));
    } else {
      pending_.push_back({line_no_, ev.trigger, false, ev.id});
    }

    for (size_t i = 1; i < tokens.size(); ++i) {
      std::string_view role, target;
      if (!SplitPair(tokens[i], &role, &target) || role.empty() ||
          target.empty()) {
        Fail(fmt::format("event '{}' has malformed argument '{}'", id,
                         tokens[i]));
      }
      ev.arguments.push_back({StripRoleSuffix(role), std::string(target)});
      pending_.push_back({line_no_, std::string(target), false, ev.id});
    }
    doc_.events.emplace(ev.id, std::move(ev));
  }

  void ParseAttribute(std::string_view id, std::string_view rest) {
    CheckNewId(id);
    const auto tokens = Tokens(rest);
    if (tokens.size() < 2 || tokens.size() > 3) {
      Fail(fmt::format("attribute '{}' needs '<Name> <target> [<value>]'",
                       id));
    }
    AttributeAnnotation attr;
    attr.id = std::string(id);
    attr.name = std::string(tokens[0]);
    attr.target = std::string(tokens[1]);
    if (tokens.size() == 3) attr.value = std::string(tokens[2]);
    pending_.push_back({line_no_, attr.target, true, attr.id});
    doc_.attributes.emplace(attr.id, std::move(attr));
  }

  // Second pass: every reference must resolve now that all lines are read.
  void Resolve() {
    for (const auto &ref : pending_) {
      line_no_ = ref.line;
      const bool is_tb = doc_.text_bounds.count(ref.target) > 0;
      const bool is_event = doc_.events.count(ref.target) > 0;
      if (!is_tb && !(ref.event_allowed && is_event)) {
        Fail(fmt::format("'{}' refers to unknown {} '{}'", ref.owner,
                         ref.event_allowed ? "annotation" : "text-bound",
                         ref.target));
      }
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &[id, attr] : doc_.attributes) {
      if (!seen.insert({attr.target, attr.name}).second) {
        line_no_ = 0;
        Fail(fmt::format("second '{}' attribute on '{}' ('{}')", attr.name,
                         attr.target, id));
      }
    }
  }

  struct Reference {
    int line;
    std::string target;
    bool event_allowed;
    std::string owner;
  };

  const NoteText &text_;
  const ParseOptions &options_;
  std::string source_;
  Diagnostics *warnings_;
  Document doc_;
  int line_no_ = 0;
  std::set<std::string> seen_ids_;
  std::vector<Reference> pending_;
};

std::string FormatSpan(const Span &span) {
  std::string out;
  for (const auto &f : span.fragments()) {
    if (!out.empty()) out += ';';
    out += fmt::format("{} {}", f.start, f.end);
  }
  return out;
}

}  // namespace

Span Span::Make(std::vector<Fragment> fragments) {
  if (fragments.empty()) throw std::invalid_argument("span has no fragments");
  for (size_t i = 0; i < fragments.size(); ++i) {
    const Fragment &f = fragments[i];
    if (f.start < 0 || f.end <= f.start) {
      throw std::invalid_argument(
          fmt::format("bad fragment [{}, {})", f.start, f.end));
    }
    if (i > 0 && f.start < fragments[i - 1].end) {
      throw std::invalid_argument("fragments overlap or are out of order");
    }
  }
  Span span;
  span.fragments_ = std::move(fragments);
  return span;
}

bool Span::Overlaps(const Span &other) const {
  for (const auto &a : fragments_) {
    for (const auto &b : other.fragments_) {
      if (std::max(a.start, b.start) < std::min(a.end, b.end)) return true;
    }
  }
  return false;
}

bool IdLess::operator()(std::string_view a, std::string_view b) const {
  auto split = [](std::string_view s) {
    size_t i = 0;
    while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
    }
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    std::string_view digits = s.substr(i, j - i);
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return std::tuple(s.substr(0, i), digits.size(), digits, s.substr(j));
  };
  const auto ka = split(a);
  const auto kb = split(b);
  if (ka != kb) return ka < kb;
  return a < b;
}

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kMimic:
      return "mimic";
    case Source::kUw:
      return "uw";
    case Source::kOther:
      break;
  }
  return "other";
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
    case Split::kUnknown:
      break;
  }
  return "unknown";
}

std::optional<Source> ParseSource(std::string_view name) {
  if (name == "mimic") return Source::kMimic;
  if (name == "uw") return Source::kUw;
  if (name == "other") return Source::kOther;
  return std::nullopt;
}

std::optional<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  if (name == "unknown") return Split::kUnknown;
  return std::nullopt;
}

const TextBound *Document::FindTextBound(std::string_view id) const {
  auto it = text_bounds.find(id);
  return it == text_bounds.end() ? nullptr : &it->second;
}

const EventAnnotation *Document::FindEvent(std::string_view id) const {
  auto it = events.find(id);
  return it == events.end() ? nullptr : &it->second;
}

const AttributeAnnotation *Document::FindAttribute(
    std::string_view target, std::string_view name) const {
  for (const auto &[id, attr] : attributes) {
    if (attr.target == target && attr.name == name) return &attr;
  }
  return nullptr;
}

const Document *Corpus::Find(std::string_view doc_id) const {
  auto it = documents.find(std::string(doc_id));
  return it == documents.end() ? nullptr : &it->second;
}

void Corpus::Add(Document doc) {
  const std::string id = doc.doc_id;
  if (!documents.emplace(id, std::move(doc)).second) {
    throw DataError(fmt::format("duplicate doc id '{}'", id));
  }
}

std::string StripRoleSuffix(std::string_view role) {
  size_t end = role.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(role[end - 1]))) {
    --end;
  }
  if (end == 0) return std::string(role);
  return std::string(role.substr(0, end));
}

std::string CoveredText(const NoteText &text, const Span &span) {
  std::string out;
  for (const auto &f : span.fragments()) {
    if (!out.empty()) out += ' ';
    out += text.Slice(f.start, f.end);
  }
  std::replace_if(
      out.begin(), out.end(),
      [](char c) { return c == '\n' || c == '\r' || c == '\t'; }, ' ');
  return out;
}

Document ParseDocument(std::string_view ann_text, std::string doc_text,
                       std::string doc_id, const ParseOptions &options,
                       Diagnostics *warnings) {
  NoteText text(std::move(doc_text));
  Parser parser(std::move(doc_id), text, options, warnings);
  Document doc = parser.Run(ann_text);
  doc.text = std::move(text);
  return doc;
}

std::string SerializeDocument(const Document &doc) {
  std::string out;
  for (const auto &[id, tb] : doc.text_bounds) {
    out += fmt::format("{}\t{} {}\t{}\n", id, tb.label, FormatSpan(tb.span),
                       tb.covered_text);
  }
  for (const auto &[id, ev] : doc.events) {
    out += fmt::format("{}\t{}:{}", id, ev.event_type, ev.trigger);
    if (!ev.has_trigger()) out.pop_back();
    std::map<std::string, int> seen;
    for (const auto &arg : ev.arguments) {
      const int n = ++seen[arg.role];
      if (n == 1) {
        out += fmt::format(" {}:{}", arg.role, arg.target);
      } else {
        out += fmt::format(" {}{}:{}", arg.role, n, arg.target);
      }
    }
    out += '\n';
  }
  for (const auto &[id, attr] : doc.attributes) {
    out += fmt::format("{}\t{} {}", id, attr.name, attr.target);
    if (!attr.value.empty()) out += fmt::format(" {}", attr.value);
    out += '\n';
  }
  return out;
}

MetadataRules MetadataRules::ParseManifest(std::string_view text,
                                           const std::string &source_name) {
  MetadataRules rules;
  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line(lines[i]);
    if (IsBlank(line) || line.front() == '#') continue;
    std::replace(line.begin(), line.end(), ',', '\t');
    std::vector<std::string> fields;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, '\t');) {
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      fields.push_back(f);
    }
    const int line_no = static_cast<int>(i + 1);
    if (fields.size() != 3) {
      throw ParseError(source_name, line_no,
                       "manifest lines need <prefix> <source> <split>");
    }
    const auto source = ParseSource(fields[1]);
    const auto split = ParseSplit(fields[2]);
    if (!source) {
      throw ParseError(source_name, line_no,
                       fmt::format("unknown source '{}'", fields[1]));
    }
    if (!split) {
      throw ParseError(source_name, line_no,
                       fmt::format("unknown split '{}'", fields[2]));
    }
    rules.AddRule(fields[0], {*source, *split});
  }
  return rules;
}

MetadataRules MetadataRules::LoadManifest(const std::filesystem::path &path) {
  return ParseManifest(ReadFile(path), path.string());
}

void MetadataRules::AddRule(std::string prefix, DocumentMetadata metadata) {
  rules_.emplace_back(std::move(prefix), metadata);
}

DocumentMetadata MetadataRules::Resolve(std::string_view doc_id) const {
  const std::pair<std::string, DocumentMetadata> *best = nullptr;
  for (const auto &rule : rules_) {
    if (doc_id.substr(0, rule.first.size()) != rule.first) continue;
    if (best == nullptr || rule.first.size() > best->first.size()) {
      best = &rule;
    }
  }
  if (best != nullptr) return best->second;

  DocumentMetadata meta;
  size_t pos = 0;
  while (pos < doc_id.size()) {
    size_t slash = doc_id.find('/', pos);
    if (slash == std::string_view::npos) break;  // last part is the file
    const std::string_view part = doc_id.substr(pos, slash - pos);
    if (auto source = ParseSource(part)) meta.source = *source;
    if (auto split = ParseSplit(part)) meta.split = *split;
    pos = slash + 1;
  }
  return meta;
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError(fmt::format("error reading '{}'", path.string()));
  return ss.str();
}

void WriteFile(const std::filesystem::path &path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError(fmt::format("error writing '{}'", path.string()));
}

Corpus LoadCorpus(const std::filesystem::path &directory,
                  const LoadOptions &options, Diagnostics *warnings) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw IoError(fmt::format("'{}' is not a directory", directory.string()));
  }
  // doc id -> (has .txt, has .ann)
  std::map<std::string, std::pair<bool, bool>> found;
  for (auto it = fs::recursive_directory_iterator(directory, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    if (!it->is_regular_file()) continue;
    const fs::path &p = it->path();
    const std::string ext = p.extension().string();
    if (ext != ".txt" && ext != ".ann") continue;
    fs::path rel = fs::relative(p, directory);
    rel.replace_extension();
    auto &entry = found[rel.generic_string()];
    (ext == ".txt" ? entry.first : entry.second) = true;
  }
  if (ec) {
    throw IoError(fmt::format("cannot list '{}': {}", directory.string(),
                              ec.message()));
  }

  Corpus corpus;
  for (const auto &[doc_id, has] : found) {
    const fs::path base = directory / fs::path(doc_id);
    fs::path txt = base;
    txt += ".txt";
    fs::path ann = base;
    ann += ".ann";
    if (!has.first) {
      throw DataError(
          fmt::format("'{}' has no matching .txt file", ann.string()));
    }
    ParseOptions parse = options.parse;
    parse.source_name = ann.string();
    Document doc = ParseDocument(has.second ? ReadFile(ann) : std::string(),
                                 ReadFile(txt), doc_id, parse, warnings);
    doc.metadata = options.metadata.Resolve(doc_id);
    corpus.Add(std::move(doc));
  }
  return corpus;
}

void WriteCorpus(const Corpus &corpus, const std::filesystem::path &directory) {
  namespace fs = std::filesystem;
  for (const auto &[doc_id, doc] : corpus.documents) {
    const fs::path base = directory / fs::path(doc_id);
    std::error_code ec;
    fs::create_directories(base.parent_path(), ec);
    if (ec) {
      throw IoError(fmt::format("cannot create '{}': {}",
                                base.parent_path().string(), ec.message()));
    }
    fs::path txt = base;
    txt += ".txt";
    fs::path ann = base;
    ann += ".ann";
    WriteFile(txt, doc.text.utf8());
    WriteFile(ann, SerializeDocument(doc));
  }
}

}  // namespace bratscore
