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

#ifndef BRATSCORE_STATUS_H_
#define BRATSCORE_STATUS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace bratscore {

// Base class for every error caused by bad input data (as opposed to bugs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent standoff annotation. Carries the location so the
// CLI can report "file:line: message".
class ParseError : public DataError {
 public:
  ParseError(std::string source, int line, const std::string &message);

  const std::string &source() const { return source_; }
  int line() const { return line_; }
  const std::string &detail() const { return detail_; }

 private:
  std::string source_;
  int line_;
  std::string detail_;
};

class SchemaError : public DataError {
 public:
  using DataError::DataError;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

// A non-fatal problem found while reading or scoring. Line is 0 when the
// diagnostic is not tied to a line.
struct Diagnostic {
  std::string source;
  int line = 0;
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

std::string FormatDiagnostic(const Diagnostic &d);

}  // namespace bratscore

#endif  // BRATSCORE_STATUS_H_
