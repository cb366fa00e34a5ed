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

// Event annotation schemes.
//
// A schema lists event types and, for each, the argument types it takes.
// Every argument type connects to the trigger through exactly one role, so a
// role name identifies the argument type within an event type. Arguments are
// either span-only (scored on exact span) or labeled (scored on a subtype
// value carried by a standoff attribute, span ignored).
//
// Schemas are loaded from JSON config text (comments allowed):
//
//   {
//     "version": "my-scheme-1",
//     "attribute_target": "argument",      // or "event"
//     "events": [
//       { "type": "Drug",
//         "display": "Drug",                // optional
//         "arguments": [
//           { "type": "StatusTime", "role": "Status", "kind": "labeled",
//             "required": true, "attribute": "StatusTimeVal",
//             "subtypes": ["none", "current", "past"] },
//           { "type": "Duration", "role": "Duration", "kind": "span_only" }
//         ] } ] }
//
// Names are canonicalized by deleting spaces ("Status Time" -> StatusTime).
// Unless "display" is given, the display name is the written name if it has
// spaces and the CamelCase-split name otherwise (StatusTime -> Status Time).
// "version" is required; "attribute" defaults to <type>Val and "required"
// to false.

#ifndef BRATSCORE_SCHEMA_H_
#define BRATSCORE_SCHEMA_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bratscore/standoff.h"

namespace bratscore {

enum class ArgumentKind { kSpanOnly, kLabeled };

std::string_view ArgumentKindName(ArgumentKind kind);

struct ArgumentSpec {
  std::string argument_type;
  std::string display_name;
  std::string role;
  ArgumentKind kind = ArgumentKind::kSpanOnly;
  std::vector<std::string> subtypes;  // labeled only
  bool required = false;
  std::string attribute_name;  // labeled only

  bool labeled() const { return kind == ArgumentKind::kLabeled; }
  bool HasSubtype(std::string_view subtype) const;
};

struct EventSpec {
  std::string event_type;
  std::string display_name;
  std::vector<ArgumentSpec> arguments;

  const ArgumentSpec *FindByType(std::string_view argument_type) const;
  const ArgumentSpec *FindByRole(std::string_view role) const;
};

// Where labeled-argument subtype attributes live.
enum class AttributeTarget { kArgument, kEvent };

class AnnotationSchema {
 public:
  // Throws SchemaError if any invariant fails: duplicate event types,
  // duplicate argument types or roles within an event type, labeled
  // arguments without subtypes or attribute name, span-only arguments with
  // either.
  AnnotationSchema(std::string version, std::vector<EventSpec> events,
                   AttributeTarget attribute_target = AttributeTarget::kArgument);

  const std::string &version() const { return version_; }
  const std::vector<EventSpec> &events() const { return events_; }
  AttributeTarget attribute_target() const { return attribute_target_; }

  const EventSpec *FindEvent(std::string_view event_type) const;
  const ArgumentSpec *FindArgument(std::string_view event_type,
                                   std::string_view argument_type) const;

  // Display names for reports. Unknown names come back unchanged.
  std::string EventDisplayName(std::string_view event_type) const;
  std::string ArgumentDisplayName(std::string_view argument_type) const;

 private:
  std::string version_;
  std::vector<EventSpec> events_;
  AttributeTarget attribute_target_;
};

// Throws SchemaError on malformed config.
AnnotationSchema LoadSchema(std::string_view config_text);
AnnotationSchema LoadSchemaFile(const std::filesystem::path &path);

// The shipped SHAC (Social History Annotation Corpus) configuration text and
// its parsed form.
std::string_view ShacSchemaConfig();
const AnnotationSchema &ShacSchema();

// "Status Time" -> "StatusTime".
std::string CanonicalName(std::string_view name);

// Validation rule identifiers.
namespace rules {
inline constexpr std::string_view kUnknownEventType = "unknown-event-type";
inline constexpr std::string_view kExactlyOneTrigger = "exactly-one-trigger";
inline constexpr std::string_view kTriggerLabelMismatch =
    "trigger-label-mismatch";
inline constexpr std::string_view kUnknownRole = "unknown-role";
inline constexpr std::string_view kArgumentTypeMismatch =
    "argument-type-mismatch";
inline constexpr std::string_view kMissingRequiredArgument =
    "missing-required-argument";
inline constexpr std::string_view kMissingSubtype = "missing-subtype";
inline constexpr std::string_view kSubtypeOutOfVocabulary =
    "subtype-out-of-vocabulary";
inline constexpr std::string_view kUnexpectedAttribute = "unexpected-attribute";
}  // namespace rules

struct Violation {
  std::string doc_id;
  std::string annotation_id;
  std::string rule;
  std::string message;

  friend bool operator==(const Violation &, const Violation &) = default;
};

// Checks `doc` against `schema`. Violations come back ordered by annotation
// id (natural order), then rule id, then message. Never throws for data
// problems.
std::vector<Violation> ValidateDocument(const Document &doc,
                                        const AnnotationSchema &schema);

}  // namespace bratscore

#endif  // BRATSCORE_SCHEMA_H_
