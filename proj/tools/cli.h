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

// The bratscore command line, as a library so tests can run it in-process.

#ifndef BRATSCORE_TOOLS_CLI_H_
#define BRATSCORE_TOOLS_CLI_H_

#include <ostream>

namespace bratscore::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitInternal = 3;

// Environment variable naming the default schema config.
inline constexpr char kSchemaEnvVar[] = "BRATSCORE_SCHEMA";

// Runs one command line (argv[0] is the program name) and returns the exit
// code. Standard output goes to `out`, diagnostics to `err`.
int Run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

}  // namespace bratscore::cli

#endif  // BRATSCORE_TOOLS_CLI_H_
