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

#ifndef ADVGAME_BIMATRIX_SOLVER_H_
#define ADVGAME_BIMATRIX_SOLVER_H_

// General N x M machinery over PayoffMatrices: equilibrium verification,
// pure and mixed equilibrium enumeration, strict dominance (pure and by
// mixtures), iterated elimination, and the upper envelope of net CCR lines.
//
// The defender is the row player (payoffs u_def), the adversary the column
// player (payoffs u_adv).

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "advgame/game_core.h"
#include "advgame/payoff_engine.h"

namespace advgame {

inline constexpr int kMaxSupportEnumerationSize = 12;

struct Certification {
  bool certified = false;
  double max_gain_def = 0.0;
  double max_gain_adv = 0.0;
  double max_gain() const { return std::max(max_gain_def, max_gain_adv); }
};

// Largest gain either player obtains by a unilateral pure deviation.
Certification VerifyEquilibrium(const PayoffMatrices& m, const Strategy& s,
                                const Strategy& r, double tol = kDefaultEps);

// Actions within tol of the best payoff against a fixed opponent strategy.
std::vector<int> BestResponseRows(const PayoffMatrices& m, const Strategy& r,
                                  double tol = kDefaultEps);
std::vector<int> BestResponseCols(const PayoffMatrices& m, const Strategy& s,
                                  double tol = kDefaultEps);

// Cells (i, j) that are mutual best responses within tol, row-major order.
std::vector<std::pair<int, int>> PureEquilibria(const PayoffMatrices& m,
                                                double tol = kDefaultEps);

struct EquilibriumResult {
  Strategy s;
  Strategy r;
  std::vector<int> row_support;
  std::vector<int> col_support;
  double max_deviation_gain = 0.0;
  // Singular indifference system or an off-support action tied with the
  // support payoff.
  bool degenerate = false;
};

// All equilibria found by enumerating support pairs, sorted by (row
// support, column support). Parallel over row supports; throws GuardError
// when either dimension exceeds kMaxSupportEnumerationSize.
std::vector<EquilibriumResult> SupportEnumeration(const PayoffMatrices& m,
                                                  double tol = kDefaultEps);

enum class DominanceStatus { kUndominated, kPureDominated, kMixedDominated };

const char* ToString(DominanceStatus status);

struct ActionDominance {
  int action = 0;
  DominanceStatus status = DominanceStatus::kUndominated;
  std::optional<int> pure_dominator;
  // Weights over all of the player's actions (zero at 'action') that beat
  // 'action' against every opponent pure action; set for both dominated
  // statuses.
  std::optional<std::vector<double>> mixture;
  // Smallest payoff advantage of the mixture over the action.
  double margin = 0.0;
};

struct DominanceReport {
  Player player = Player::kDefender;
  std::vector<ActionDominance> actions;
};

DominanceReport ComputeDominance(const PayoffMatrices& m, Player player,
                                 double tol = kDefaultEps);

// max over sigma in the simplex of min_k (gaps^T sigma)_k, solved exactly by
// enumerating the vertices of the feasible polytope. Rows are the mixing
// player's actions, columns the opponent's.
struct MaximinSolution {
  std::vector<double> weights;
  double value = 0.0;
};
MaximinSolution SolveMaximin(const Eigen::MatrixXd& gaps);

struct EliminationStep {
  int round = 0;
  Player player = Player::kDefender;
  int action = 0;  // index in the original game
  DominanceStatus status = DominanceStatus::kMixedDominated;
};

struct EliminationResult {
  PayoffMatrices reduced;
  std::vector<int> surviving_rows;
  std::vector<int> surviving_cols;
  std::vector<EliminationStep> trace;
};

// Removes strictly (possibly mixed-) dominated actions of both players,
// defender first in each round, until neither player has any.
EliminationResult IteratedElimination(const PayoffMatrices& m,
                                      double tol = kDefaultEps);

struct EnvelopeBreakpoint {
  double rho = 0.0;
  std::vector<int> models;  // every model whose net line meets here
};

// Upper envelope over rho in [0, r_max] of CCR_i(rho) - mu_i^def for one
// real attack.
struct EnvelopeSegments {
  int attack = 0;
  std::vector<double> breakpoints;   // 0 = rho_0 < ... < rho_K = r_max
  std::vector<int> segment_models;   // size K (1 when r_max = 0)
  std::vector<EnvelopeBreakpoint> interior;  // rho_1 .. rho_{K-1}

  // Pointwise argmax, ties toward the lower model index.
  int ModelAt(double rho) const;
};

EnvelopeSegments UpperEnvelopeCcr(const GameSpec& spec, int attack);

namespace reference {

// Serial reference for SupportEnumeration; identical output.
std::vector<EquilibriumResult> SupportEnumeration(const PayoffMatrices& m,
                                                  double tol = kDefaultEps);

}  // namespace reference
}  // namespace advgame

#endif  // ADVGAME_BIMATRIX_SOLVER_H_
