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

#include "advgame/bimatrix_solver.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "advgame/analytic_2x2.h"

namespace advgame {
namespace {

using Mask = std::uint32_t;

std::vector<int> MaskToIndices(Mask mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<Mask>> MasksByPopcount(int size) {
  std::vector<std::vector<Mask>> out(static_cast<std::size_t>(size) + 1);
  for (Mask mask = 1; mask < (Mask{1} << size); ++mask) {
    out[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
  }
  return out;
}

// Builds a strategy of length 'size' placing 'weights' on 'support'.
// Weights are renormalized; the caller guarantees they are positive.
Strategy Embed(int size, const std::vector<int>& support,
               const Eigen::VectorXd& weights) {
  std::vector<double> probs(static_cast<std::size_t>(size), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) sum += weights(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < support.size(); ++k) {
    probs[static_cast<std::size_t>(support[k])] = weights(static_cast<Eigen::Index>(k)) / sum;
  }
  return Strategy::FromProbabilities(std::move(probs));
}

struct IndifferenceSolution {
  Eigen::VectorXd weights;  // over the mixing player's support
  double value = 0.0;
  bool singular = false;
};

// Finds weights w over 'mix' (columns of 'payoff' seen by the indifferent
// player) so that every action in 'indiff' earns the same payoff:
//   sum_k payoff(a, mix_k) w_k = v   for a in indiff,   sum_k w_k = 1.
// 'payoff' is indexed (indifferent action, mixing action).
std::optional<IndifferenceSolution> SolveIndifference(
    const Eigen::MatrixXd& payoff, const std::vector<int>& indiff,
    const std::vector<int>& mix, double tol) {
  const auto rows = static_cast<Eigen::Index>(indiff.size()) + 1;
  const auto cols = static_cast<Eigen::Index>(mix.size()) + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (Eigen::Index r = 0; r + 1 < rows; ++r) {
    for (Eigen::Index c = 0; c + 1 < cols; ++c) {
      a(r, c) = payoff(indiff[static_cast<std::size_t>(r)],
                       mix[static_cast<std::size_t>(c)]);
    }
    a(r, cols - 1) = -1.0;
  }
  a.row(rows - 1).head(cols - 1).setOnes();
  b(rows - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  Eigen::VectorXd x = lu.solve(b);
  const double scale = 1.0 + a.cwiseAbs().maxCoeff();
  if (!x.allFinite() || (a * x - b).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    return std::nullopt;
  }
  IndifferenceSolution sol;
  sol.weights = x.head(cols - 1);
  sol.value = x(cols - 1);
  sol.singular = lu.rank() < cols;
  if ((sol.weights.array() <= tol).any()) return std::nullopt;
  return sol;
}

std::optional<EquilibriumResult> TrySupportPair(const PayoffMatrices& m,
                                                Mask row_mask, Mask col_mask,
                                                double tol) {
  const std::vector<int> rows = MaskToIndices(row_mask);
  const std::vector<int> cols = MaskToIndices(col_mask);

  // Adversary mixes over cols to make the defender indifferent over rows.
  auto r_sol = SolveIndifference(m.u_def, rows, cols, tol);
  if (!r_sol) return std::nullopt;
  // Defender mixes over rows to make the adversary indifferent over cols.
  Eigen::MatrixXd adv_t = m.u_adv.transpose();
  auto s_sol = SolveIndifference(adv_t, cols, rows, tol);
  if (!s_sol) return std::nullopt;

  Strategy s = Embed(m.rows(), rows, s_sol->weights);
  Strategy r = Embed(m.cols(), cols, r_sol->weights);
  const Certification cert = VerifyEquilibrium(m, s, r, tol);
  if (!cert.certified) return std::nullopt;

  EquilibriumResult res{std::move(s), std::move(r), rows, cols,
                        cert.max_gain(), r_sol->singular || s_sol->singular};
  const Eigen::VectorXd row_pay = m.u_def * res.r.AsVector();
  const Eigen::VectorXd col_pay = m.u_adv.transpose() * res.s.AsVector();
  const double row_best = row_pay.maxCoeff();
  const double col_best = col_pay.maxCoeff();
  for (int i = 0; i < m.rows(); ++i) {
    if (!(row_mask >> i & 1u) && row_pay(i) >= row_best - tol) res.degenerate = true;
  }
  for (int j = 0; j < m.cols(); ++j) {
    if (!(col_mask >> j & 1u) && col_pay(j) >= col_best - tol) res.degenerate = true;
  }
  return res;
}

void CheckSupportGuard(const PayoffMatrices& m) {
  if (m.u_adv.rows() != m.u_def.rows() || m.u_adv.cols() != m.u_def.cols()) {
    throw DimensionError("payoff matrices differ in shape");
  }
  if (m.rows() < 1 || m.cols() < 1) throw DimensionError("empty game");
  if (m.rows() > kMaxSupportEnumerationSize ||
      m.cols() > kMaxSupportEnumerationSize) {
    throw GuardError("support enumeration limited to " +
                     std::to_string(kMaxSupportEnumerationSize) +
                     " actions per player");
  }
}

void SortCanonical(std::vector<EquilibriumResult>& results) {
  std::sort(results.begin(), results.end(),
            [](const EquilibriumResult& a, const EquilibriumResult& b) {
              if (a.row_support != b.row_support) return a.row_support < b.row_support;
              return a.col_support < b.col_support;
            });
}

// Payoff of each of the player's actions (rows) against each opponent
// pure action (columns).
Eigen::MatrixXd ActionPayoffs(const PayoffMatrices& m, Player player) {
  return player == Player::kDefender ? m.u_def : Eigen::MatrixXd(m.u_adv.transpose());
}

PayoffMatrices Restrict(const PayoffMatrices& m, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(cols.size());
  PayoffMatrices out{Eigen::MatrixXd(nr, nc), Eigen::MatrixXd(nr, nc)};
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (Eigen::Index j = 0; j < nc; ++j) {
      out.u_adv(i, j) = m.u_adv(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      out.u_def(i, j) = m.u_def(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace

Certification VerifyEquilibrium(const PayoffMatrices& m, const Strategy& s,
                                const Strategy& r, double tol) {
  const double def_value = Bilinear(m.u_def, s, r);
  const double adv_value = Bilinear(m.u_adv, s, r);
  Certification cert;
  cert.max_gain_def = (m.u_def * r.AsVector()).maxCoeff() - def_value;
  cert.max_gain_adv = (m.u_adv.transpose() * s.AsVector()).maxCoeff() - adv_value;
  cert.certified = cert.max_gain_def <= tol && cert.max_gain_adv <= tol;
  return cert;
}

std::vector<int> BestResponseRows(const PayoffMatrices& m, const Strategy& r,
                                  double tol) {
  const Eigen::VectorXd pay = m.u_def * r.AsVector();
  const double best = pay.maxCoeff();
  std::vector<int> out;
  for (int i = 0; i < m.rows(); ++i) {
    if (pay(i) >= best - tol) out.push_back(i);
  }
  return out;
}

std::vector<int> BestResponseCols(const PayoffMatrices& m, const Strategy& s,
                                  double tol) {
  const Eigen::VectorXd pay = m.u_adv.transpose() * s.AsVector();
  const double best = pay.maxCoeff();
  std::vector<int> out;
  for (int j = 0; j < m.cols(); ++j) {
    if (pay(j) >= best - tol) out.push_back(j);
  }
  return out;
}

std::vector<std::pair<int, int>> PureEquilibria(const PayoffMatrices& m,
                                                double tol) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < m.rows(); ++i) {
    const double adv_best = m.u_adv.row(i).maxCoeff();
    for (int j = 0; j < m.cols(); ++j) {
      const double def_best = m.u_def.col(j).maxCoeff();
      if (m.u_adv(i, j) >= adv_best - tol && m.u_def(i, j) >= def_best - tol) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

std::vector<EquilibriumResult> SupportEnumeration(const PayoffMatrices& m,
                                                  double tol) {
  CheckSupportGuard(m);
  const Mask row_end = Mask{1} << m.rows();
  const Mask col_end = Mask{1} << m.cols();
  std::vector<EquilibriumResult> results;
#pragma omp parallel
  {
    std::vector<EquilibriumResult> local;
#pragma omp for schedule(dynamic)
    for (std::int64_t rm = 1; rm < static_cast<std::int64_t>(row_end); ++rm) {
      for (Mask cm = 1; cm < col_end; ++cm) {
        if (auto eq = TrySupportPair(m, static_cast<Mask>(rm), cm, tol)) {
          local.push_back(std::move(*eq));
        }
      }
    }
#pragma omp critical
    results.insert(results.end(), std::make_move_iterator(local.begin()),
                   std::make_move_iterator(local.end()));
  }
  SortCanonical(results);
  return results;
}

namespace reference {

std::vector<EquilibriumResult> SupportEnumeration(const PayoffMatrices& m,
                                                  double tol) {
  CheckSupportGuard(m);
  std::vector<EquilibriumResult> results;
  for (Mask rm = 1; rm < (Mask{1} << m.rows()); ++rm) {
    for (Mask cm = 1; cm < (Mask{1} << m.cols()); ++cm) {
      if (auto eq = TrySupportPair(m, rm, cm, tol)) results.push_back(std::move(*eq));
    }
  }
  SortCanonical(results);
  return results;
}

}  // namespace reference

const char* ToString(DominanceStatus status) {
  switch (status) {
    case DominanceStatus::kUndominated: return "undominated";
    case DominanceStatus::kPureDominated: return "pure_dominated";
    case DominanceStatus::kMixedDominated: return "mixed_dominated";
  }
  return "unknown";
}

MaximinSolution SolveMaximin(const Eigen::MatrixXd& gaps) {
  const int k = static_cast<int>(gaps.rows());
  const int l = static_cast<int>(gaps.cols());
  if (k < 1 || l < 1) throw DimensionError("maximin needs a non-empty matrix");
  if (k > 31 || l > 31) throw GuardError("maximin limited to 31 actions");

  MaximinSolution best;
  best.value = -std::numeric_limits<double>::infinity();
  const auto col_masks = MasksByPopcount(l);
  for (Mask rm = 1; rm < (Mask{1} << k); ++rm) {
    const int p = std::popcount(rm);
    if (p > l) continue;
    const std::vector<int> rows = MaskToIndices(rm);
    for (Mask cm : col_masks[static_cast<std::size_t>(p)]) {
      const std::vector<int> cols = MaskToIndices(cm);
      // sum_b sigma_b gaps(b, c) - t = 0 for c in cols; sum_b sigma_b = 1.
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(p + 1, p + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p + 1);
      for (int c = 0; c < p; ++c) {
        for (int b = 0; b < p; ++b) {
          a(c, b) = gaps(rows[static_cast<std::size_t>(b)], cols[static_cast<std::size_t>(c)]);
        }
        a(c, p) = -1.0;
      }
      a.row(p).head(p).setOnes();
      rhs(p) = 1.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (!lu.isInvertible()) continue;
      const Eigen::VectorXd x = lu.solve(rhs);
      if (!x.allFinite() || (x.head(p).array() < -1e-12).any()) continue;

      Eigen::VectorXd sigma = Eigen::VectorXd::Zero(k);
      for (int b = 0; b < p; ++b) {
        sigma(rows[static_cast<std::size_t>(b)]) = std::max(0.0, x(b));
      }
      const double total = sigma.sum();
      if (!(total > 0.0)) continue;
      sigma /= total;
      const double value = (gaps.transpose() * sigma).minCoeff();
      if (value > best.value) {
        best.value = value;
        best.weights.assign(sigma.data(), sigma.data() + k);
      }
    }
  }
  return best;
}

DominanceReport ComputeDominance(const PayoffMatrices& m, Player player,
                                 double tol) {
  const Eigen::MatrixXd pay = ActionPayoffs(m, player);
  const int n_actions = static_cast<int>(pay.rows());
  DominanceReport report;
  report.player = player;
  for (int a = 0; a < n_actions; ++a) {
    ActionDominance entry;
    entry.action = a;
    if (n_actions > 1) {
      std::vector<int> others;
      for (int b = 0; b < n_actions; ++b) {
        if (b != a) others.push_back(b);
      }
      Eigen::MatrixXd gaps(static_cast<Eigen::Index>(others.size()), pay.cols());
      for (std::size_t b = 0; b < others.size(); ++b) {
        gaps.row(static_cast<Eigen::Index>(b)) = pay.row(others[b]) - pay.row(a);
      }

      double best_pure = tol;
      for (std::size_t b = 0; b < others.size(); ++b) {
        const double gap = gaps.row(static_cast<Eigen::Index>(b)).minCoeff();
        if (gap > best_pure) {
          best_pure = gap;
          entry.pure_dominator = others[b];
        }
      }

      const MaximinSolution mix = SolveMaximin(gaps);
      if (mix.value > tol) {
        std::vector<double> weights(static_cast<std::size_t>(n_actions), 0.0);
        for (std::size_t b = 0; b < others.size(); ++b) {
          weights[static_cast<std::size_t>(others[b])] = mix.weights[b];
        }
        entry.mixture = std::move(weights);
        entry.margin = mix.value;
        entry.status = entry.pure_dominator ? DominanceStatus::kPureDominated
                                            : DominanceStatus::kMixedDominated;
      }
    }
    report.actions.push_back(std::move(entry));
  }
  return report;
}

EliminationResult IteratedElimination(const PayoffMatrices& m, double tol) {
  EliminationResult result;
  for (int i = 0; i < m.rows(); ++i) result.surviving_rows.push_back(i);
  for (int j = 0; j < m.cols(); ++j) result.surviving_cols.push_back(j);

  auto eliminate = [&](Player player, int round) {
    const PayoffMatrices sub =
        Restrict(m, result.surviving_rows, result.surviving_cols);
    const DominanceReport report = ComputeDominance(sub, player, tol);
    std::vector<int>& alive = player == Player::kDefender
                                  ? result.surviving_rows
                                  : result.surviving_cols;
    std::vector<int> kept;
    for (const ActionDominance& entry : report.actions) {
      const int original = alive[static_cast<std::size_t>(entry.action)];
      if (entry.status == DominanceStatus::kUndominated) {
        kept.push_back(original);
      } else {
        result.trace.push_back({round, player, original, entry.status});
      }
    }
    const bool changed = kept.size() != alive.size();
    alive = std::move(kept);
    return changed;
  };

  for (int round = 1;; ++round) {
    const bool def_changed = eliminate(Player::kDefender, round);
    const bool adv_changed = eliminate(Player::kAdversary, round);
    if (!def_changed && !adv_changed) break;
  }
  result.reduced = Restrict(m, result.surviving_rows, result.surviving_cols);
  return result;
}

int EnvelopeSegments::ModelAt(double rho) const {
  for (const EnvelopeBreakpoint& bp : interior) {
    if (rho == bp.rho) {
      return *std::min_element(bp.models.begin(), bp.models.end());
    }
  }
  const auto it = std::upper_bound(breakpoints.begin() + 1, breakpoints.end(), rho);
  const auto seg = std::min<std::ptrdiff_t>(it - breakpoints.begin() - 1,
                                            static_cast<std::ptrdiff_t>(segment_models.size()) - 1);
  return segment_models[static_cast<std::size_t>(std::max<std::ptrdiff_t>(seg, 0))];
}

EnvelopeSegments UpperEnvelopeCcr(const GameSpec& spec, int attack) {
  RequireValid(spec);
  CheckRealAttack(spec, attack);
  const int n = spec.num_models();
  const double r_max = spec.economics.r_max;
  std::vector<double> intercept(static_cast<std::size_t>(n));
  std::vector<double> slope(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double acc = spec.models[static_cast<std::size_t>(i)].acc;
    intercept[static_cast<std::size_t>(i)] = acc - MuDef(spec, i);
    slope[static_cast<std::size_t>(i)] = spec.robustness(i, attack) - acc;
  }
  auto value = [&](int i, double rho) {
    return intercept[static_cast<std::size_t>(i)] + slope[static_cast<std::size_t>(i)] * rho;
  };
  auto tie_tol = [&](double rho) {
    double mag = 1.0;
    for (int i = 0; i < n; ++i) mag = std::max(mag, std::abs(value(i, rho)));
    return 1e-12 * mag;
  };
  // Among lines tied at rho, the one leading just to the right of rho:
  // steepest, then lowest index.
  auto leader = [&](double rho) {
    int best = 0;
    for (int i = 1; i < n; ++i) {
      const double diff = value(i, rho) - value(best, rho);
      if (diff > tie_tol(rho) ||
          (std::abs(diff) <= tie_tol(rho) &&
           slope[static_cast<std::size_t>(i)] > slope[static_cast<std::size_t>(best)])) {
        best = i;
      }
    }
    return best;
  };

  EnvelopeSegments env;
  env.attack = attack;
  env.breakpoints.push_back(0.0);
  double rho = 0.0;
  int current = leader(0.0);
  while (true) {
    double next = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double ds = slope[static_cast<std::size_t>(i)] - slope[static_cast<std::size_t>(current)];
      if (ds <= 0.0) continue;
      const double cross =
          (intercept[static_cast<std::size_t>(current)] - intercept[static_cast<std::size_t>(i)]) / ds;
      if (cross > rho) next = std::min(next, cross);
    }
    env.segment_models.push_back(current);
    if (!(next < r_max)) break;
    EnvelopeBreakpoint bp{next, {}};
    for (int i = 0; i < n; ++i) {
      if (std::abs(value(i, next) - value(current, next)) <= tie_tol(next)) {
        bp.models.push_back(i);
      }
    }
    rho = next;
    const int following = leader(next);
    if (following == current) {
      // Rounding put the crossing inside the tie band; no switch happens.
      env.segment_models.pop_back();
      continue;
    }
    env.breakpoints.push_back(next);
    env.interior.push_back(std::move(bp));
    current = following;
  }
  env.breakpoints.push_back(r_max);
  return env;
}

}  // namespace advgame
