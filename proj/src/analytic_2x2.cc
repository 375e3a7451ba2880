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

#include "advgame/analytic_2x2.h"

#include <cmath>

#include "advgame/payoff_engine.h"

namespace advgame {

std::string ToString(AdversaryCase c) {
  switch (c) {
    case AdversaryCase::kNeverAttack: return "case1_never_attack";
    case AdversaryCase::kAlwaysAttack: return "case2_always_attack";
    case AdversaryCase::kIndifferent: return "case3_indifferent";
  }
  return "unknown";
}

std::string ToString(DefenderCase c) {
  switch (c) {
    case DefenderCase::kAlwaysDefend: return "caseA_always_defend";
    case DefenderCase::kNeverDefend: return "caseB_never_defend";
    case DefenderCase::kIndifferent: return "caseC_indifferent";
  }
  return "unknown";
}

AdversaryCaseSet AdversaryPreconditionsFrom(double rob1, double rob2,
                                            double mu_adv) {
  const double threshold = 1.0 - mu_adv;
  AdversaryCaseSet set;
  if (threshold < rob2) set.Insert(AdversaryCase::kNeverAttack);
  if (rob1 < threshold) set.Insert(AdversaryCase::kAlwaysAttack);
  if (rob1 <= threshold && threshold <= rob2) {
    set.Insert(AdversaryCase::kIndifferent);
  }
  return set;
}

DefenderCaseSet DefenderPreconditionsFrom(double delta_acc, double delta_rob,
                                          double delta_mu_def, double r_max) {
  const double rho_bar = (delta_acc - delta_mu_def) / (delta_acc + delta_rob);
  DefenderCaseSet set;
  if (rho_bar < r_max) set.Insert(DefenderCase::kAlwaysDefend);
  if (delta_mu_def < delta_acc) set.Insert(DefenderCase::kNeverDefend);
  if (0.0 <= rho_bar && rho_bar <= r_max) set.Insert(DefenderCase::kIndifferent);
  return set;
}

void Require2x2Ordered(const GameSpec& spec) {
  if (spec.num_models() != 2 || spec.num_actions() != 2) {
    throw DimensionError("closed-form analysis requires a 2x2 game");
  }
  if (!CheckOrdering2x2(spec)) {
    throw OrderingError("closed-form analysis requires acc_1 > acc_2 > rob_2 > rob_1");
  }
}

double DeltaAcc(const GameSpec& spec) {
  return spec.models[0].acc - spec.models[1].acc;
}

double DeltaRob(const GameSpec& spec) {
  return spec.robustness(1, 0) - spec.robustness(0, 0);
}

double DeltaCcr(const GameSpec& spec, const Strategy& r) {
  Require2x2Ordered(spec);
  CheckAdversaryStrategy(spec, r);
  return DeltaAcc(spec) -
         r[kAttack] * spec.economics.r_max * (DeltaAcc(spec) + DeltaRob(spec));
}

AdversaryCase ClassifyAdversary(const GameSpec& spec, const Strategy& s,
                                double eps) {
  Require2x2Ordered(spec);
  const double gap = AsrMixed(spec, s, kAttack) - MuAdv(spec, kAttack);
  if (gap < -eps) return AdversaryCase::kNeverAttack;
  if (gap > eps) return AdversaryCase::kAlwaysAttack;
  return AdversaryCase::kIndifferent;
}

AdversaryCaseSet AdversaryPreconditions(const GameSpec& spec) {
  Require2x2Ordered(spec);
  return AdversaryPreconditionsFrom(spec.robustness(0, 0),
                                    spec.robustness(1, 0),
                                    MuAdv(spec, kAttack));
}

DefenderCase ClassifyDefender(const GameSpec& spec, const Strategy& r,
                              double eps) {
  const double gap = DeltaCcr(spec, r) - DeltaMuDef(spec);
  if (gap < -eps) return DefenderCase::kAlwaysDefend;
  if (gap > eps) return DefenderCase::kNeverDefend;
  return DefenderCase::kIndifferent;
}

DefenderCaseSet DefenderPreconditions(const GameSpec& spec) {
  Require2x2Ordered(spec);
  return DefenderPreconditionsFrom(DeltaAcc(spec), DeltaRob(spec),
                                   DeltaMuDef(spec), spec.economics.r_max);
}

BestResponseSet BestResponseAdv(const GameSpec& spec, const Strategy& s,
                                double eps) {
  switch (ClassifyAdversary(spec, s, eps)) {
    case AdversaryCase::kNeverAttack: return BestResponseSet::Pure(kNoAttack);
    case AdversaryCase::kAlwaysAttack: return BestResponseSet::Pure(kAttack);
    case AdversaryCase::kIndifferent: break;
  }
  return BestResponseSet::AnyMix();
}

BestResponseSet BestResponseDef(const GameSpec& spec, const Strategy& r,
                                double eps) {
  switch (ClassifyDefender(spec, r, eps)) {
    case DefenderCase::kAlwaysDefend: return BestResponseSet::Pure(kHardenedModel);
    case DefenderCase::kNeverDefend: return BestResponseSet::Pure(kStandardModel);
    case DefenderCase::kIndifferent: break;
  }
  return BestResponseSet::AnyMix();
}

std::optional<MixedEquilibrium2x2> MixedNash2x2(const GameSpec& spec,
                                                double /*eps*/) {
  Require2x2Ordered(spec);
  const double r_max = spec.economics.r_max;
  if (!(r_max > 0.0)) return std::nullopt;

  const double rob1 = spec.robustness(0, 0);
  const double rob2 = spec.robustness(1, 0);
  const double mu_adv = MuAdv(spec, kAttack);
  const double rho_bar = DefendThreshold(spec);
  if (!(rob1 < 1.0 - mu_adv && 1.0 - mu_adv < rob2)) return std::nullopt;
  if (!(0.0 < rho_bar && rho_bar < r_max)) return std::nullopt;

  const double s1 = (rob2 - 1.0 + mu_adv) / DeltaRob(spec);
  const double r1 = rho_bar / r_max;
  MixedEquilibrium2x2 eq{Strategy::FromProbabilities({s1, 1.0 - s1}),
                         Strategy::FromProbabilities({r1, 1.0 - r1})};
  eq.adversary_residual = std::abs(AsrMixed(spec, eq.s_star, kAttack) - mu_adv);
  eq.defender_residual = std::abs(DeltaCcr(spec, eq.r_star) - DeltaMuDef(spec));
  eq.unique = true;
  return eq;
}

double DefendThreshold(const GameSpec& spec) {
  Require2x2Ordered(spec);
  return (DeltaAcc(spec) - DeltaMuDef(spec)) / (DeltaAcc(spec) + DeltaRob(spec));
}

std::optional<double> CcrIntersection(const GameSpec& spec, int model_a,
                                      int model_b, int attack) {
  CheckModelIndex(spec, model_a);
  CheckModelIndex(spec, model_b);
  CheckRealAttack(spec, attack);
  const double acc_a = spec.models[static_cast<std::size_t>(model_a)].acc;
  const double acc_b = spec.models[static_cast<std::size_t>(model_b)].acc;
  const double drop_a = acc_a - spec.robustness(model_a, attack);
  const double drop_b = acc_b - spec.robustness(model_b, attack);
  // (1-rho) acc_a + rho rob_a = (1-rho) acc_b + rho rob_b
  //   <=>  acc_a - acc_b = rho (drop_a - drop_b)
  const double denom = drop_a - drop_b;
  if (denom == 0.0) return std::nullopt;
  const double rho = (acc_a - acc_b) / denom;
  if (!(rho >= 0.0 && rho <= 1.0)) return std::nullopt;
  return rho;
}

}  // namespace advgame
