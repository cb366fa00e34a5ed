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

#include "bratscore/schema.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "json.hpp"

namespace bratscore {
namespace {

using nlohmann::json;

bool IsIdentifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

// "StatusTime" -> "Status Time".
std::string SplitCamelCase(std::string_view name) {
  std::string out;
  for (size_t i = 0; i < name.size(); ++i) {
    const auto c = static_cast<unsigned char>(name[i]);
    if (i > 0 && std::isupper(c) &&
        std::islower(static_cast<unsigned char>(name[i - 1]))) {
      out += ' ';
    }
    out += name[i];
  }
  return out;
}

std::string DisplayFor(std::string_view written, const json &obj) {
  if (obj.contains("display")) return obj.at("display").get<std::string>();
  if (written.find(' ') != std::string_view::npos) return std::string(written);
  return SplitCamelCase(written);
}

void CheckKeys(const json &obj, std::initializer_list<std::string_view> allowed,
               std::string_view where) {
  if (!obj.is_object()) {
    throw SchemaError(fmt::format("{} must be an object", where));
  }
  for (const auto &[key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw SchemaError(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
}

std::string RequiredName(const json &obj, const char *key,
                         std::string_view where) {
  if (!obj.contains(key) || !obj.at(key).is_string()) {
    throw SchemaError(fmt::format("{}: missing string '{}'", where, key));
  }
  return obj.at(key).get<std::string>();
}

std::string Canonical(const std::string &written, std::string_view where) {
  std::string name = CanonicalName(written);
  if (!IsIdentifier(name)) {
    throw SchemaError(fmt::format("{}: invalid name '{}'", where, written));
  }
  return name;
}

ArgumentSpec ParseArgument(const json &obj, const std::string &event_type) {
  const std::string where = fmt::format("event '{}' argument", event_type);
  CheckKeys(obj,
            {"type", "display", "role", "kind", "required", "attribute",
             "subtypes"},
            where);
  ArgumentSpec arg;
  const std::string written = RequiredName(obj, "type", where);
  arg.argument_type = Canonical(written, where);
  arg.display_name = DisplayFor(written, obj);
  arg.role = Canonical(RequiredName(obj, "role", where), where);

  const std::string kind = RequiredName(obj, "kind", where);
  if (kind == "labeled") {
    arg.kind = ArgumentKind::kLabeled;
  } else if (kind == "span_only") {
    arg.kind = ArgumentKind::kSpanOnly;
  } else {
    throw SchemaError(
        fmt::format("{} '{}': unknown kind '{}'", where, written, kind));
  }
  if (obj.contains("required")) {
    if (!obj.at("required").is_boolean()) {
      throw SchemaError(fmt::format("{} '{}': 'required' must be a boolean",
                                    where, written));
    }
    arg.required = obj.at("required").get<bool>();
  }
  if (obj.contains("subtypes")) {
    const json &subtypes = obj.at("subtypes");
    if (!subtypes.is_array()) {
      throw SchemaError(
          fmt::format("{} '{}': 'subtypes' must be a list", where, written));
    }
    for (const auto &s : subtypes) {
      if (!s.is_string() || !IsIdentifier(s.get<std::string>())) {
        throw SchemaError(fmt::format("{} '{}': invalid subtype {}", where,
                                      written, s.dump()));
      }
      arg.subtypes.push_back(s.get<std::string>());
    }
  }
  if (obj.contains("attribute")) {
    arg.attribute_name = Canonical(RequiredName(obj, "attribute", where), where);
  } else if (arg.labeled()) {
    arg.attribute_name = arg.argument_type + "Val";
  }
  return arg;
}

}  // namespace

std::string_view ArgumentKindName(ArgumentKind kind) {
  return kind == ArgumentKind::kLabeled ? "labeled" : "span_only";
}

std::string CanonicalName(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c != ' ') out += c;
  }
  return out;
}

bool ArgumentSpec::HasSubtype(std::string_view subtype) const {
  return std::find(subtypes.begin(), subtypes.end(), subtype) != subtypes.end();
}

const ArgumentSpec *EventSpec::FindByType(
    std::string_view argument_type) const {
  for (const auto &a : arguments) {
    if (a.argument_type == argument_type) return &a;
  }
  return nullptr;
}

const ArgumentSpec *EventSpec::FindByRole(std::string_view role) const {
  for (const auto &a : arguments) {
    if (a.role == role) return &a;
  }
  return nullptr;
}

AnnotationSchema::AnnotationSchema(std::string version,
                                   std::vector<EventSpec> events,
                                   AttributeTarget attribute_target)
    : version_(std::move(version)),
      events_(std::move(events)),
      attribute_target_(attribute_target) {
  std::set<std::string> event_types;
  for (const auto &ev : events_) {
    if (!event_types.insert(ev.event_type).second) {
      throw SchemaError(
          fmt::format("duplicate event type '{}'", ev.event_type));
    }
    std::set<std::string> types, roles;
    for (const auto &arg : ev.arguments) {
      if (!types.insert(arg.argument_type).second) {
        throw SchemaError(fmt::format("event '{}': duplicate argument type '{}'",
                                      ev.event_type, arg.argument_type));
      }
      if (!roles.insert(arg.role).second) {
        throw SchemaError(fmt::format("event '{}': role '{}' used twice",
                                      ev.event_type, arg.role));
      }
      if (arg.labeled()) {
        if (arg.subtypes.empty()) {
          throw SchemaError(
              fmt::format("event '{}': labeled argument '{}' has no subtypes",
                          ev.event_type, arg.argument_type));
        }
        if (arg.attribute_name.empty()) {
          throw SchemaError(fmt::format(
              "event '{}': labeled argument '{}' has no attribute name",
              ev.event_type, arg.argument_type));
        }
        std::set<std::string> seen(arg.subtypes.begin(), arg.subtypes.end());
        if (seen.size() != arg.subtypes.size()) {
          throw SchemaError(
              fmt::format("event '{}': argument '{}' repeats a subtype",
                          ev.event_type, arg.argument_type));
        }
      } else if (!arg.subtypes.empty() || !arg.attribute_name.empty()) {
        throw SchemaError(fmt::format(
            "event '{}': span-only argument '{}' cannot have subtypes or an "
            "attribute",
            ev.event_type, arg.argument_type));
      }
    }
  }
}

const EventSpec *AnnotationSchema::FindEvent(
    std::string_view event_type) const {
  for (const auto &ev : events_) {
    if (ev.event_type == event_type) return &ev;
  }
  return nullptr;
}

const ArgumentSpec *AnnotationSchema::FindArgument(
    std::string_view event_type, std::string_view argument_type) const {
  const EventSpec *ev = FindEvent(event_type);
  return ev == nullptr ? nullptr : ev->FindByType(argument_type);
}

std::string AnnotationSchema::EventDisplayName(
    std::string_view event_type) const {
  const EventSpec *ev = FindEvent(event_type);
  return ev == nullptr ? std::string(event_type) : ev->display_name;
}

std::string AnnotationSchema::ArgumentDisplayName(
    std::string_view argument_type) const {
  for (const auto &ev : events_) {
    if (const ArgumentSpec *arg = ev.FindByType(argument_type)) {
      return arg->display_name;
    }
  }
  return std::string(argument_type);
}

AnnotationSchema LoadSchema(std::string_view config_text) {
  json root;
  try {
    root = json::parse(config_text, /*cb=*/nullptr, /*allow_exceptions=*/true,
                       /*ignore_comments=*/true);
  } catch (const json::parse_error &e) {
    throw SchemaError(fmt::format("schema config is not valid JSON: {}",
                                  e.what()));
  }
  try {
    CheckKeys(root, {"version", "attribute_target", "events"}, "schema");
    if (!root.contains("version")) {
      throw SchemaError("schema needs a \"version\"");
    }
    const std::string version = root.at("version").get<std::string>();
    AttributeTarget target = AttributeTarget::kArgument;
    if (root.contains("attribute_target")) {
      const auto t = root.at("attribute_target").get<std::string>();
      if (t == "event") {
        target = AttributeTarget::kEvent;
      } else if (t != "argument") {
        throw SchemaError(fmt::format("unknown attribute_target '{}'", t));
      }
    }
    if (!root.contains("events") || !root.at("events").is_array()) {
      throw SchemaError("schema needs an 'events' list");
    }
    std::vector<EventSpec> events;
    for (const auto &ev_obj : root.at("events")) {
      CheckKeys(ev_obj, {"type", "display", "arguments"}, "event");
      EventSpec ev;
      const std::string written = RequiredName(ev_obj, "type", "event");
      ev.event_type = Canonical(written, "event");
      ev.display_name = DisplayFor(written, ev_obj);
      if (ev_obj.contains("arguments")) {
        if (!ev_obj.at("arguments").is_array()) {
          throw SchemaError(fmt::format("event '{}': 'arguments' must be a list",
                                        ev.event_type));
        }
        for (const auto &arg_obj : ev_obj.at("arguments")) {
          ev.arguments.push_back(ParseArgument(arg_obj, ev.event_type));
        }
      }
      events.push_back(std::move(ev));
    }
    return AnnotationSchema(version, std::move(events), target);
  } catch (const json::exception &e) {
    throw SchemaError(fmt::format("schema config: {}", e.what()));
  }
}

AnnotationSchema LoadSchemaFile(const std::filesystem::path &path) {
  try {
    return LoadSchema(ReadFile(path));
  } catch (const SchemaError &e) {
    throw SchemaError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

const AnnotationSchema &ShacSchema() {
  static const AnnotationSchema *schema =
      new AnnotationSchema(LoadSchema(ShacSchemaConfig()));
  return *schema;
}

std::vector<Violation> ValidateDocument(const Document &doc,
                                        const AnnotationSchema &schema) {
  std::vector<Violation> out;
  auto add = [&](const std::string &id, std::string_view rule,
                 std::string message) {
    out.push_back({doc.doc_id, id, std::string(rule), std::move(message)});
  };
  const bool on_event = schema.attribute_target() == AttributeTarget::kEvent;
  // (target id, attribute name) pairs that some labeled argument expects.
  std::set<std::pair<std::string, std::string>> expected_attributes;

  for (const auto &[id, ev] : doc.events) {
    if (!ev.has_trigger()) {
      add(id, rules::kExactlyOneTrigger,
          fmt::format("event '{}' must have exactly one trigger", id));
    } else if (const TextBound *trigger = doc.FindTextBound(ev.trigger);
               trigger != nullptr && trigger->label != ev.event_type) {
      add(id, rules::kTriggerLabelMismatch,
          fmt::format("trigger '{}' is labeled '{}' but the event is '{}'",
                      ev.trigger, trigger->label, ev.event_type));
    }
    const EventSpec *spec = schema.FindEvent(ev.event_type);
    if (spec == nullptr) {
      add(id, rules::kUnknownEventType,
          fmt::format("unknown event type '{}'", ev.event_type));
      continue;
    }
    for (const auto &arg : ev.arguments) {
      const ArgumentSpec *arg_spec = spec->FindByRole(arg.role);
      if (arg_spec == nullptr) {
        add(id, rules::kUnknownRole,
            fmt::format("'{}' events have no '{}' role", ev.event_type,
                        arg.role));
        continue;
      }
      const TextBound *tb = doc.FindTextBound(arg.target);
      if (tb == nullptr) continue;  // parser guarantees this; be total
      if (tb->label != arg_spec->argument_type) {
        add(id, rules::kArgumentTypeMismatch,
            fmt::format("role '{}' takes '{}' but '{}' is labeled '{}'",
                        arg.role, arg_spec->argument_type, tb->id, tb->label));
        continue;
      }
      if (!arg_spec->labeled()) continue;
      const std::string &holder = on_event ? id : tb->id;
      expected_attributes.insert({holder, arg_spec->attribute_name});
      const AttributeAnnotation *attr =
          doc.FindAttribute(holder, arg_spec->attribute_name);
      if (attr == nullptr) {
        add(tb->id, rules::kMissingSubtype,
            fmt::format("'{}' argument of '{}' has no '{}' attribute",
                        arg_spec->argument_type, id, arg_spec->attribute_name));
      } else if (!arg_spec->HasSubtype(attr->value)) {
        add(attr->id, rules::kSubtypeOutOfVocabulary,
            fmt::format("'{}' is not a '{}' subtype", attr->value,
                        arg_spec->argument_type));
      }
    }
    for (const auto &arg_spec : spec->arguments) {
      if (!arg_spec.required) continue;
      const bool present =
          std::any_of(ev.arguments.begin(), ev.arguments.end(),
                      [&](const EventArgument &a) { return a.role == arg_spec.role; });
      if (!present) {
        add(id, rules::kMissingRequiredArgument,
            fmt::format("'{}' event is missing required argument '{}'",
                        ev.event_type, arg_spec.argument_type));
      }
    }
  }

  for (const auto &[id, attr] : doc.attributes) {
    if (expected_attributes.count({attr.target, attr.name}) == 0) {
      add(id, rules::kUnexpectedAttribute,
          fmt::format("'{}' does not take a '{}' attribute", attr.target,
                      attr.name));
    }
  }

  IdLess id_less;
  std::stable_sort(out.begin(), out.end(),
                   [&](const Violation &a, const Violation &b) {
                     if (a.annotation_id != b.annotation_id) {
                       return id_less(a.annotation_id, b.annotation_id);
                     }
                     return std::tie(a.rule, a.message) <
                            std::tie(b.rule, b.message);
                   });
  return out;
}

}  // namespace bratscore
