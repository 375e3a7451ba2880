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

#include "advgame/cli/config.h"

#include <fstream>
#include <sstream>

namespace advgame::cli {
namespace {

using nlohmann::json;

const json& Field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  return *it;
}

double Number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

std::string Text(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

double OptionalCost(const json& obj, const std::string& where) {
  const auto it = obj.find("ongoing_cost");
  return it == obj.end() ? 0.0 : Number(*it, where + ".ongoing_cost");
}

std::string LineColumn(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

GameSpec ParseSpec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("JSON syntax error at " + LineColumn(text, e.byte) + ": " +
                     e.what());
  }

  std::vector<ModelProfile> models;
  const json& jm = Field(doc, "models", "config");
  if (!jm.is_array()) throw ParseError("models: expected an array");
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const std::string where = "models[" + std::to_string(i) + "]";
    models.push_back({Text(Field(jm[i], "name", where), where + ".name"),
                      Number(Field(jm[i], "acc", where), where + ".acc"),
                      OptionalCost(jm[i], where)});
  }

  std::vector<AttackAction> attacks;
  const json& ja = Field(doc, "attacks", "config");
  if (!ja.is_array()) throw ParseError("attacks: expected an array");
  for (std::size_t j = 0; j < ja.size(); ++j) {
    const std::string where = "attacks[" + std::to_string(j) + "]";
    attacks.push_back(AttackAction::Real(
        Text(Field(ja[j], "name", where), where + ".name"),
        OptionalCost(ja[j], where)));
  }

  const json& jr = Field(doc, "robustness", "config");
  if (!jr.is_array()) throw ParseError("robustness: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(jr.size());
  const auto cols = rows == 0 ? Eigen::Index{0}
                              : static_cast<Eigen::Index>(jr[0].is_array() ? jr[0].size() : 0);
  RobustnessMatrix rob(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = jr[static_cast<std::size_t>(i)];
    const std::string where = "robustness[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError(where + ": expected an array");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError(where + ": has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      rob(i, j) = Number(row[static_cast<std::size_t>(j)],
                         where + "[" + std::to_string(j) + "]");
    }
  }

  const json& je = Field(doc, "economics", "config");
  EconomicParams econ;
  auto num = [&](const char* key) {
    return Number(Field(je, key, "economics"), std::string("economics.") + key);
  };
  econ.r_plus_def = num("R_plus_def");
  econ.r_minus_def = num("R_minus_def");
  econ.r_plus_adv = num("R_plus_adv");
  econ.r_minus_adv = num("R_minus_adv");
  econ.i_def = num("I_def");
  econ.i_adv = num("I_adv");
  econ.r_max = num("r_max");
  const json& jn = Field(je, "n", "economics");
  if (!jn.is_number_integer()) {
    throw ParseError("economics.n: expected an integer");
  }
  econ.n = jn.get<std::int64_t>();

  return GameSpec::Make(std::move(models), std::move(attacks), std::move(rob),
                        econ);
}

GameSpec LoadSpecText(std::string_view text) {
  GameSpec spec = ParseSpec(text);
  RequireValid(spec);
  return spec;
}

GameSpec ParseSpecFile(const std::string& path) {
  try {
    return ParseSpec(ReadFile(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

GameSpec LoadSpec(const std::string& path) {
  GameSpec spec = ParseSpecFile(path);
  RequireValid(spec);
  return spec;
}

nlohmann::json SpecToJson(const GameSpec& spec) {
  json models = json::array();
  for (const auto& m : spec.models) {
    models.push_back({{"name", m.name}, {"acc", m.acc}, {"ongoing_cost", m.ongoing_cost}});
  }
  json attacks = json::array();
  for (const auto& a : spec.attacks) {
    if (a.is_no_attack()) continue;
    attacks.push_back({{"name", a.name()}, {"ongoing_cost", a.ongoing_cost()}});
  }
  json rob = json::array();
  for (Eigen::Index i = 0; i < spec.robustness.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < spec.robustness.cols(); ++j) row.push_back(spec.robustness(i, j));
    rob.push_back(std::move(row));
  }
  const EconomicParams& e = spec.economics;
  return {{"models", models},
          {"attacks", attacks},
          {"robustness", rob},
          {"economics",
           {{"R_plus_def", e.r_plus_def}, {"R_minus_def", e.r_minus_def},
            {"R_plus_adv", e.r_plus_adv}, {"R_minus_adv", e.r_minus_adv},
            {"I_def", e.i_def}, {"I_adv", e.i_adv}, {"n", e.n},
            {"r_max", e.r_max}}}};
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("error writing '" + path + "'");
}

}  // namespace advgame::cli
