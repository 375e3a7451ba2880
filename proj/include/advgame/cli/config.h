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

#ifndef ADVGAME_CLI_CONFIG_H_
#define ADVGAME_CLI_CONFIG_H_

// JSON game configuration:
//
//   {
//     "models":     [{"name": "standard", "acc": 0.952, "ongoing_cost": 0}],
//     "attacks":    [{"name": "pgd", "ongoing_cost": 0}],
//     "robustness": [[0.035]],                      // N x (M-1), by model
//     "economics":  {"R_plus_def": 1, "R_minus_def": 0, "R_plus_adv": 1,
//                    "R_minus_adv": 0, "I_def": 0, "I_adv": 0,
//                    "n": 1000, "r_max": 1}
//   }
//
// The no-attack action is implicit and always last.

#include <string>
#include <string_view>

#include "json.hpp"

#include "advgame/game_core.h"

namespace advgame::cli {

// Parses without checking game invariants. Throws ParseError naming the
// line/column or field at fault.
GameSpec ParseSpec(std::string_view text);
// As ParseSpec, then ValidationError if any invariant fails.
GameSpec LoadSpecText(std::string_view text);
// Reads a file (IoError if unreadable) and validates.
GameSpec LoadSpec(const std::string& path);
GameSpec ParseSpecFile(const std::string& path);

nlohmann::json SpecToJson(const GameSpec& spec);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace advgame::cli

#endif  // ADVGAME_CLI_CONFIG_H_
