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

#ifndef ADVGAME_GAME_CORE_H_
#define ADVGAME_GAME_CORE_H_

// Domain types of the adversarial classification game and the two
// performance metrics every solver is built on:
//
//   ASR_ij      = 1 - rob_ij                       (attack success rate)
//   CCR_ij(rho) = (1 - rho) acc_i + rho rob_ij     (correct classification)
//
// The adversary's last action is always "no attack"; its ASR is undefined
// and its CCR is the clean accuracy for every rho.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "advgame/errors.h"

namespace advgame {

inline constexpr double kDefaultEps = 1e-9;
inline constexpr double kStrategySumTol = 1e-12;

struct ModelProfile {
  std::string name;
  double acc = 0.0;
  double ongoing_cost = 0.0;  // O_i^def, per classified sample
};

// Either a real attack or the distinguished no-attack action.
class AttackAction {
 public:
  static AttackAction Real(std::string name, double ongoing_cost);
  static AttackAction NoAttack();

  bool is_no_attack() const { return no_attack_; }
  const std::string& name() const { return name_; }
  // Zero for the no-attack action.
  double ongoing_cost() const { return ongoing_cost_; }

 private:
  AttackAction(std::string name, double cost, bool no_attack)
      : name_(std::move(name)), ongoing_cost_(cost), no_attack_(no_attack) {}

  std::string name_;
  double ongoing_cost_ = 0.0;
  bool no_attack_ = false;
};

// N x (M-1) robust accuracies; there is no column for the no-attack action.
using RobustnessMatrix = Eigen::MatrixXd;

struct EconomicParams {
  double r_plus_def = 1.0;
  double r_minus_def = 0.0;
  double r_plus_adv = 1.0;
  double r_minus_adv = 0.0;
  double i_def = 0.0;
  double i_adv = 0.0;
  std::int64_t n = 1;
  double r_max = 1.0;
};

struct GameSpec {
  std::vector<ModelProfile> models;
  std::vector<AttackAction> attacks;  // last entry is NoAttack
  RobustnessMatrix robustness;
  EconomicParams economics;

  int num_models() const { return static_cast<int>(models.size()); }
  int num_actions() const { return static_cast<int>(attacks.size()); }
  int no_attack_index() const { return num_actions() - 1; }

  // Builds a spec from plain data; the no-attack action is appended.
  static GameSpec Make(std::vector<ModelProfile> models,
                       std::vector<AttackAction> real_attacks,
                       RobustnessMatrix robustness, EconomicParams economics);
};

// A probability distribution over a player's pure actions.
class Strategy {
 public:
  Strategy() = default;

  // Rejects negative entries and sums further than kStrategySumTol from one;
  // accepted inputs are renormalized.
  static Strategy FromProbabilities(std::vector<double> probs);
  static Strategy Pure(int size, int index);
  static Strategy Uniform(int size);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
  std::span<const double> probs() const { return probs_; }
  Eigen::Map<const Eigen::VectorXd> AsVector() const {
    return {probs_.data(), static_cast<Eigen::Index>(probs_.size())};
  }
  std::vector<int> Support(double tol = 0.0) const;

 private:
  explicit Strategy(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Reports every violated invariant; never throws.
ValidationReport ValidateSpec(const GameSpec& spec);

// Throws ValidationError listing all violations.
void RequireValid(const GameSpec& spec);

// acc_1 > acc_2 > rob_2 > rob_1, strictly. Requires N = M = 2.
bool CheckOrdering2x2(const GameSpec& spec);

// Line value (1 - rho) acc + rho rob, with no range checks.
inline double CcrLine(double acc, double rob, double rho) {
  return (1.0 - rho) * acc + rho * rob;
}

double Asr(const GameSpec& spec, int model, int attack);
// rho must lie in [0, r_max].
double Ccr(const GameSpec& spec, int model, int attack, double rho);
double AsrMixed(const GameSpec& spec, const Strategy& s, int attack);
double CcrMixed(const GameSpec& spec, int model, const Strategy& r);

// Range/dimension helpers shared by the solvers.
void CheckModelIndex(const GameSpec& spec, int model);
void CheckActionIndex(const GameSpec& spec, int attack);
void CheckRealAttack(const GameSpec& spec, int attack);
void CheckDefenderStrategy(const GameSpec& spec, const Strategy& s);
void CheckAdversaryStrategy(const GameSpec& spec, const Strategy& r);

}  // namespace advgame

#endif  // ADVGAME_GAME_CORE_H_
