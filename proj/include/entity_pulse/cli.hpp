// Copyright 2026 The Entity Pulse Authors
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

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace entity_pulse::cli {

/// Exit codes of `epx`.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // runtime failure (I/O, corrupt index, invalid spec, ...)
  kUsage = 2,    // malformed command line
};

/// Runs the `epx` command line. `args[0]` is the program name. Query
/// results go to `out` unless `--output` names a file; diagnostics go to
/// `diag` as JSON lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace entity_pulse::cli
