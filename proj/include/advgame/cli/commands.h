// Copyright 2026 The advgame Authors
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

#ifndef ADVGAME_CLI_COMMANDS_H_
#define ADVGAME_CLI_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace advgame::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitGuard = 2;
inline constexpr int kExitIo = 3;

// Runs the command line (args[0] is the program name). Reports go to 'out'
// unless --out is given; diagnostics go to 'err'.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Shortest decimal string that parses back to the same double.
std::string FormatNumber(double value);

}  // namespace advgame::cli

#endif  // ADVGAME_CLI_COMMANDS_H_
