// Copyright 2026 The povmsparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMSPARSE_CLI_COMMANDS_HPP
#define POVMSPARSE_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace povmsparse::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
/// A checked invariant failed (validation, design check, experiment).
inline constexpr int kExitInvariant = 1;
/// Bad usage, unreadable input or inconsistent configuration.
inline constexpr int kExitUsage = 2;

/// Runs the tool on `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace povmsparse::cli

#endif  // POVMSPARSE_CLI_COMMANDS_HPP
