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

#include "bratscore/status.h"

#include <fmt/format.h>

namespace bratscore {

ParseError::ParseError(std::string source, int line, const std::string &message)
    : DataError(line > 0 ? fmt::format("{}:{}: {}", source, line, message)
                         : fmt::format("{}: {}", source, message)),
      source_(std::move(source)),
      line_(line),
      detail_(message) {}

std::string FormatDiagnostic(const Diagnostic &d) {
  if (d.line > 0) return fmt::format("{}:{}: {}", d.source, d.line, d.message);
  return fmt::format("{}: {}", d.source, d.message);
}

}  // namespace bratscore
