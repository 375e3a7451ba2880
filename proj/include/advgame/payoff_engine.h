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

#ifndef ADVGAME_PAYOFF_ENGINE_H_
#define ADVGAME_PAYOFF_ENGINE_H_

// Expected payoff per sample (EPPS), the cost-to-reward thresholds mu, and
// the N x M utility matrices of both players.
//
// Adversary, per perturbed sample against defender strategy s:
//   EPPS_j^adv(s) = -O_j - R_- + (R_+ + R_-) ASR_j(s)
//                 = (R_+ + R_-) (ASR_j(s) - mu_j^adv)
// Defender, per classified sample against adversary strategy r:
//   EPPS_i^def(r) = (R_+ + R_-) (CCR_i(r; r_max) - mu_i^def)
//
// Utilities: U^adv_ij = -I^adv + n r_max EPPS^adv_ij (j real), -I^adv (j =
// no attack); U^def_ij = -I^def + n EPPS^def_ij.

#include <vector>

#include <Eigen/Dense>

#include "advgame/game_core.h"

namespace advgame {

enum class Player { kDefender, kAdversary };

// Row player is the defender (models), column player the adversary.
struct PayoffMatrices {
  Eigen::MatrixXd u_adv;
  Eigen::MatrixXd u_def;

  int rows() const { return static_cast<int>(u_def.rows()); }
  int cols() const { return static_cast<int>(u_def.cols()); }
};

struct EppsVector {
  Player owner = Player::kAdversary;
  Eigen::VectorXd values;
};

double MuAdv(const GameSpec& spec, int attack);
double MuDef(const GameSpec& spec, int model);
// (O_1 - O_2) / (R_+ + R_-); N must be 2.
double DeltaMuDef(const GameSpec& spec);

double EppsAdvPure(const GameSpec& spec, int model, int attack);
// Length M; the no-attack entry is 0.
EppsVector EppsAdv(const GameSpec& spec, const Strategy& s);

double EppsDefPure(const GameSpec& spec, int model, int attack);
EppsVector EppsDef(const GameSpec& spec, const Strategy& r);

double UtilityAdv(const GameSpec& spec, const Strategy& s, const Strategy& r);
double UtilityDef(const GameSpec& spec, const Strategy& s, const Strategy& r);

PayoffMatrices ComputePayoffMatrices(const GameSpec& spec);

// s^T U r for either player's matrix.
double Bilinear(const Eigen::MatrixXd& u, const Strategy& s,
                const Strategy& r);

}  // namespace advgame

#endif  // ADVGAME_PAYOFF_ENGINE_H_
