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

#include "advgame/game_core.h"

#include <cmath>
#include <numeric>
#include <sstream>

namespace advgame {
namespace {

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("invalid game spec: " + Join(violations)),
      violations_(std::move(violations)) {}

AttackAction AttackAction::Real(std::string name, double ongoing_cost) {
  return AttackAction(std::move(name), ongoing_cost, false);
}

AttackAction AttackAction::NoAttack() {
  return AttackAction("no_attack", 0.0, true);
}

GameSpec GameSpec::Make(std::vector<ModelProfile> models,
                        std::vector<AttackAction> real_attacks,
                        RobustnessMatrix robustness,
                        EconomicParams economics) {
  GameSpec spec;
  spec.models = std::move(models);
  spec.attacks = std::move(real_attacks);
  spec.attacks.push_back(AttackAction::NoAttack());
  spec.robustness = std::move(robustness);
  spec.economics = economics;
  return spec;
}

Strategy Strategy::FromProbabilities(std::vector<double> probs) {
  if (probs.empty()) throw RangeError("strategy must be non-empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw RangeError("strategy entries must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kStrategySumTol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "strategy sums to " << sum << ", not 1";
    throw RangeError(msg.str());
  }
  for (double& p : probs) p /= sum;
  return Strategy(std::move(probs));
}

Strategy Strategy::Pure(int size, int index) {
  if (size <= 0 || index < 0 || index >= size) {
    throw RangeError("pure strategy index out of range");
  }
  std::vector<double> probs(static_cast<std::size_t>(size), 0.0);
  probs[static_cast<std::size_t>(index)] = 1.0;
  return Strategy(std::move(probs));
}

Strategy Strategy::Uniform(int size) {
  if (size <= 0) throw RangeError("strategy must be non-empty");
  return Strategy(std::vector<double>(static_cast<std::size_t>(size),
                                      1.0 / size));
}

std::vector<int> Strategy::Support(double tol) const {
  std::vector<int> support;
  for (int i = 0; i < size(); ++i) {
    if ((*this)[i] > tol) support.push_back(i);
  }
  return support;
}

ValidationReport ValidateSpec(const GameSpec& spec) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  const int n_models = spec.num_models();
  if (n_models < 1) fail("at least one model required");
  for (const auto& m : spec.models) {
    if (!InUnit(m.acc)) fail("acc out of [0,1] for model '" + m.name + "'");
    if (!(m.ongoing_cost >= 0.0) || !std::isfinite(m.ongoing_cost)) {
      fail("ongoing_cost must be >= 0 for model '" + m.name + "'");
    }
  }

  int no_attack_count = 0;
  for (const auto& a : spec.attacks) {
    if (a.is_no_attack()) {
      ++no_attack_count;
    } else if (!(a.ongoing_cost() >= 0.0) || !std::isfinite(a.ongoing_cost())) {
      fail("ongoing_cost must be >= 0 for attack '" + a.name() + "'");
    }
  }
  if (spec.num_actions() < 2) fail("at least one real attack required");
  if (no_attack_count != 1) {
    fail("exactly one NoAttack action required");
  } else if (!spec.attacks.back().is_no_attack()) {
    fail("NoAttack must be the last action");
  }

  const int real = spec.num_actions() - no_attack_count;
  if (spec.robustness.rows() != n_models || spec.robustness.cols() != real) {
    std::ostringstream msg;
    msg << "robustness must be " << n_models << "x" << real << ", got "
        << spec.robustness.rows() << "x" << spec.robustness.cols();
    fail(msg.str());
  } else {
    bool bad = false;
    for (Eigen::Index i = 0; i < spec.robustness.size(); ++i) {
      bad = bad || !InUnit(spec.robustness.data()[i]);
    }
    if (bad) fail("robustness out of [0,1]");
  }

  const EconomicParams& e = spec.economics;
  const std::pair<const char*, double> money[] = {
      {"R_plus_def", e.r_plus_def}, {"R_minus_def", e.r_minus_def},
      {"R_plus_adv", e.r_plus_adv}, {"R_minus_adv", e.r_minus_adv},
      {"I_def", e.i_def},           {"I_adv", e.i_adv}};
  for (const auto& [name, value] : money) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      fail(std::string(name) + " must be >= 0");
    }
  }
  if (e.n < 1) fail("n must be >= 1");
  if (!InUnit(e.r_max)) fail("r_max out of [0,1]");
  if (!(e.r_plus_adv + e.r_minus_adv > 0.0)) {
    fail("R_plus_adv + R_minus_adv must be > 0");
  }
  if (!(e.r_plus_def + e.r_minus_def > 0.0)) {
    fail("R_plus_def + R_minus_def must be > 0");
  }
  return report;
}

void RequireValid(const GameSpec& spec) {
  ValidationReport report = ValidateSpec(spec);
  if (!report.ok()) throw ValidationError(std::move(report.violations));
}

void CheckModelIndex(const GameSpec& spec, int model) {
  if (model < 0 || model >= spec.num_models()) {
    throw RangeError("model index " + std::to_string(model) + " out of range");
  }
}

void CheckActionIndex(const GameSpec& spec, int attack) {
  if (attack < 0 || attack >= spec.num_actions()) {
    throw RangeError("attack index " + std::to_string(attack) +
                     " out of range");
  }
}

void CheckRealAttack(const GameSpec& spec, int attack) {
  CheckActionIndex(spec, attack);
  if (spec.attacks[static_cast<std::size_t>(attack)].is_no_attack()) {
    throw NoAttackError("ASR undefined for NoAttack");
  }
}

void CheckDefenderStrategy(const GameSpec& spec, const Strategy& s) {
  if (s.size() != spec.num_models()) {
    throw DimensionError("defender strategy has " + std::to_string(s.size()) +
                         " entries, game has " +
                         std::to_string(spec.num_models()) + " models");
  }
}

void CheckAdversaryStrategy(const GameSpec& spec, const Strategy& r) {
  if (r.size() != spec.num_actions()) {
    throw DimensionError("adversary strategy has " + std::to_string(r.size()) +
                         " entries, game has " +
                         std::to_string(spec.num_actions()) + " actions");
  }
}

bool CheckOrdering2x2(const GameSpec& spec) {
  if (spec.num_models() != 2 || spec.num_actions() != 2) {
    throw DimensionError("ordering check requires a 2x2 game");
  }
  const double acc1 = spec.models[0].acc;
  const double acc2 = spec.models[1].acc;
  const double rob1 = spec.robustness(0, 0);
  const double rob2 = spec.robustness(1, 0);
  return acc1 > acc2 && acc2 > rob2 && rob2 > rob1;
}

double Asr(const GameSpec& spec, int model, int attack) {
  CheckModelIndex(spec, model);
  CheckRealAttack(spec, attack);
  return 1.0 - spec.robustness(model, attack);
}

double Ccr(const GameSpec& spec, int model, int attack, double rho) {
  CheckModelIndex(spec, model);
  CheckActionIndex(spec, attack);
  if (!(rho >= 0.0 && rho <= spec.economics.r_max)) {
    throw RangeError("rho outside [0, r_max]");
  }
  const double acc = spec.models[static_cast<std::size_t>(model)].acc;
  if (attack == spec.no_attack_index()) return acc;
  return CcrLine(acc, spec.robustness(model, attack), rho);
}

double AsrMixed(const GameSpec& spec, const Strategy& s, int attack) {
  CheckDefenderStrategy(spec, s);
  CheckRealAttack(spec, attack);
  return 1.0 - s.AsVector().dot(spec.robustness.col(attack));
}

double CcrMixed(const GameSpec& spec, int model, const Strategy& r) {
  CheckModelIndex(spec, model);
  CheckAdversaryStrategy(spec, r);
  const double r_max = spec.economics.r_max;
  double total = 0.0;
  for (int j = 0; j < spec.num_actions(); ++j) {
    total += r[j] * Ccr(spec, model, j, r_max);
  }
  return total;
}

}  // namespace advgame
