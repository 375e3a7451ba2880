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

#include "advgame/payoff_engine.h"

namespace advgame {
namespace {

double AdvScale(const EconomicParams& e) { return e.r_plus_adv + e.r_minus_adv; }
double DefScale(const EconomicParams& e) { return e.r_plus_def + e.r_minus_def; }

double EppsAdvFromAsr(const GameSpec& spec, int attack, double asr) {
  const EconomicParams& e = spec.economics;
  const double cost = spec.attacks[static_cast<std::size_t>(attack)].ongoing_cost();
  return -cost - e.r_minus_adv + AdvScale(e) * asr;
}

double EppsDefFromCcr(const GameSpec& spec, int model, double ccr) {
  const EconomicParams& e = spec.economics;
  const double cost = spec.models[static_cast<std::size_t>(model)].ongoing_cost;
  return -cost - e.r_minus_def + DefScale(e) * ccr;
}

}  // namespace

double MuAdv(const GameSpec& spec, int attack) {
  CheckRealAttack(spec, attack);
  const EconomicParams& e = spec.economics;
  const double cost = spec.attacks[static_cast<std::size_t>(attack)].ongoing_cost();
  return (cost + e.r_minus_adv) / AdvScale(e);
}

double MuDef(const GameSpec& spec, int model) {
  CheckModelIndex(spec, model);
  const EconomicParams& e = spec.economics;
  return (spec.models[static_cast<std::size_t>(model)].ongoing_cost +
          e.r_minus_def) /
         DefScale(e);
}

double DeltaMuDef(const GameSpec& spec) {
  if (spec.num_models() != 2) {
    throw DimensionError("delta_mu_def requires exactly two models");
  }
  return (spec.models[0].ongoing_cost - spec.models[1].ongoing_cost) /
         DefScale(spec.economics);
}

double EppsAdvPure(const GameSpec& spec, int model, int attack) {
  const double asr = Asr(spec, model, attack);
  const EconomicParams& e = spec.economics;
  const double cost = spec.attacks[static_cast<std::size_t>(attack)].ongoing_cost();
  return -cost - e.r_minus_adv * (1.0 - asr) + e.r_plus_adv * asr;
}

EppsVector EppsAdv(const GameSpec& spec, const Strategy& s) {
  CheckDefenderStrategy(spec, s);
  EppsVector out{Player::kAdversary, Eigen::VectorXd::Zero(spec.num_actions())};
  for (int j = 0; j < spec.no_attack_index(); ++j) {
    out.values(j) = EppsAdvFromAsr(spec, j, AsrMixed(spec, s, j));
  }
  return out;
}

double EppsDefPure(const GameSpec& spec, int model, int attack) {
  const double ccr = Ccr(spec, model, attack, spec.economics.r_max);
  const EconomicParams& e = spec.economics;
  const double cost = spec.models[static_cast<std::size_t>(model)].ongoing_cost;
  return -cost - e.r_minus_def * (1.0 - ccr) + e.r_plus_def * ccr;
}

EppsVector EppsDef(const GameSpec& spec, const Strategy& r) {
  CheckAdversaryStrategy(spec, r);
  EppsVector out{Player::kDefender, Eigen::VectorXd::Zero(spec.num_models())};
  for (int i = 0; i < spec.num_models(); ++i) {
    out.values(i) = EppsDefFromCcr(spec, i, CcrMixed(spec, i, r));
  }
  return out;
}

double UtilityAdv(const GameSpec& spec, const Strategy& s, const Strategy& r) {
  CheckAdversaryStrategy(spec, r);
  const EconomicParams& e = spec.economics;
  const double per_sample = r.AsVector().dot(EppsAdv(spec, s).values);
  return -e.i_adv + static_cast<double>(e.n) * e.r_max * per_sample;
}

double UtilityDef(const GameSpec& spec, const Strategy& s, const Strategy& r) {
  CheckDefenderStrategy(spec, s);
  const EconomicParams& e = spec.economics;
  const double per_sample = s.AsVector().dot(EppsDef(spec, r).values);
  return -e.i_def + static_cast<double>(e.n) * per_sample;
}

PayoffMatrices ComputePayoffMatrices(const GameSpec& spec) {
  RequireValid(spec);
  const EconomicParams& e = spec.economics;
  const int rows = spec.num_models();
  const int cols = spec.num_actions();
  const double n = static_cast<double>(e.n);
  PayoffMatrices m{Eigen::MatrixXd(rows, cols), Eigen::MatrixXd(rows, cols)};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m.u_adv(i, j) = j == spec.no_attack_index()
                          ? -e.i_adv
                          : -e.i_adv + n * e.r_max * EppsAdvPure(spec, i, j);
      m.u_def(i, j) = -e.i_def + n * EppsDefPure(spec, i, j);
    }
  }
  return m;
}

double Bilinear(const Eigen::MatrixXd& u, const Strategy& s,
                const Strategy& r) {
  if (u.rows() != s.size() || u.cols() != r.size()) {
    throw DimensionError("strategy sizes do not match payoff matrix");
  }
  return s.AsVector().dot(u * r.AsVector());
}

}  // namespace advgame
