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

#ifndef ADVGAME_ANALYTIC_2X2_H_
#define ADVGAME_ANALYTIC_2X2_H_

// Closed-form analysis of the game with two models (standard, hardened) and
// one real attack. With Delta acc = acc_1 - acc_2 and Delta rob = rob_2 -
// rob_1, both positive under the ordering acc_1 > acc_2 > rob_2 > rob_1:
//
//   ASR(s)          = 1 - rob_2 + s_1 Delta rob       (increasing in s_1)
//   Delta CCR(r)    = Delta acc - r_1 r_max (Delta acc + Delta rob)
//
// The adversary attacks iff ASR(s) > mu^adv; the defender deploys the
// hardened model iff Delta CCR(r) < Delta mu^def.

#include <bitset>
#include <optional>
#include <string>

#include "advgame/game_core.h"

namespace advgame {

enum class AdversaryCase { kNeverAttack = 0, kAlwaysAttack = 1, kIndifferent = 2 };
enum class DefenderCase { kAlwaysDefend = 0, kNeverDefend = 1, kIndifferent = 2 };

std::string ToString(AdversaryCase c);
std::string ToString(DefenderCase c);

template <typename Case>
class CaseSet {
 public:
  void Insert(Case c) { bits_.set(static_cast<std::size_t>(c)); }
  bool Contains(Case c) const { return bits_.test(static_cast<std::size_t>(c)); }
  bool empty() const { return bits_.none(); }
  int size() const { return static_cast<int>(bits_.count()); }
  bool operator==(const CaseSet&) const = default;

 private:
  std::bitset<3> bits_;
};

using AdversaryCaseSet = CaseSet<AdversaryCase>;
using DefenderCaseSet = CaseSet<DefenderCase>;

// Either a single pure action or the whole simplex.
struct BestResponseSet {
  bool any_mix = false;
  int action = -1;  // valid when !any_mix

  static BestResponseSet Pure(int a) { return {false, a}; }
  static BestResponseSet AnyMix() { return {true, -1}; }
  bool Contains(int a) const { return any_mix || action == a; }
  bool operator==(const BestResponseSet&) const = default;
};

struct MixedEquilibrium2x2 {
  Strategy s_star;
  Strategy r_star;
  double adversary_residual = 0.0;  // |ASR(s*) - mu^adv|
  double defender_residual = 0.0;   // |Delta CCR(r*) - Delta mu^def|
  bool unique = true;
};

// Index constants for the 2x2 game.
inline constexpr int kStandardModel = 0;
inline constexpr int kHardenedModel = 1;
inline constexpr int kAttack = 0;
inline constexpr int kNoAttack = 1;

// Scalar forms of the precondition tables, usable without a GameSpec
// (region maps sweep these directly).
AdversaryCaseSet AdversaryPreconditionsFrom(double rob1, double rob2,
                                            double mu_adv);
DefenderCaseSet DefenderPreconditionsFrom(double delta_acc, double delta_rob,
                                          double delta_mu_def, double r_max);

// All of the following require N = M = 2 and the strict ordering; they
// throw DimensionError / OrderingError otherwise.
void Require2x2Ordered(const GameSpec& spec);

double DeltaAcc(const GameSpec& spec);
double DeltaRob(const GameSpec& spec);
double DeltaCcr(const GameSpec& spec, const Strategy& r);

AdversaryCase ClassifyAdversary(const GameSpec& spec, const Strategy& s,
                                double eps = kDefaultEps);
AdversaryCaseSet AdversaryPreconditions(const GameSpec& spec);

DefenderCase ClassifyDefender(const GameSpec& spec, const Strategy& r,
                              double eps = kDefaultEps);
DefenderCaseSet DefenderPreconditions(const GameSpec& spec);

BestResponseSet BestResponseAdv(const GameSpec& spec, const Strategy& s,
                                double eps = kDefaultEps);
BestResponseSet BestResponseDef(const GameSpec& spec, const Strategy& r,
                                double eps = kDefaultEps);

// The fully mixed equilibrium when rob_1 < 1 - mu^adv < rob_2 and
// 0 < (Delta acc - Delta mu^def)/(Delta acc + Delta rob) < r_max; it is then
// the only equilibrium. Absent otherwise (including r_max = 0).
std::optional<MixedEquilibrium2x2> MixedNash2x2(const GameSpec& spec,
                                                double eps = kDefaultEps);

// (Delta acc - Delta mu^def)/(Delta acc + Delta rob). The hardened model is
// a best response to some adversary strategy iff r_max >= this value.
double DefendThreshold(const GameSpec& spec);

// Attack rate at which the CCR lines of two models cross, if in [0, 1].
// Works for any N; no ordering needed.
std::optional<double> CcrIntersection(const GameSpec& spec, int model_a,
                                      int model_b, int attack);

}  // namespace advgame

#endif  // ADVGAME_ANALYTIC_2X2_H_
