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

#ifndef ADVGAME_MC_SIMULATOR_H_
#define ADVGAME_MC_SIMULATOR_H_

// Per-sample Monte-Carlo realization of the game, used to check the
// analytic utilities empirically.
//
// One trial: the defender deploys model i ~ s; the first floor(n r_max)
// samples are adversary-controlled and each gets an action ~ r. A real
// attack j is one Bernoulli(rob_ij) draw: on failure of the attack the
// defender classifies correctly, otherwise the adversary collects R_+^adv
// and the defender misclassifies. Untouched samples are correct with
// probability acc_i. Every sample consumes exactly two uniforms, so r = e_M
// reproduces the r_max = 0 trial bit for bit.

#include <cstdint>
#include <vector>

#include "advgame/game_core.h"

namespace advgame {

struct SimConfig {
  std::uint64_t seed = 0;
  std::int64_t n = 1;
  int trials = 1;
  double r_max = 0.0;

  // n and r_max taken from the spec's economics.
  static SimConfig FromSpec(const GameSpec& spec, std::uint64_t seed,
                            int trials);
  std::int64_t controlled_samples() const;
  // floor(n r_max) / n: the attack fraction a trial actually realizes.
  double effective_r_max() const;
};

struct TrialRecord {
  int model = 0;
  std::int64_t attacked = 0;
  std::int64_t successes = 0;
  std::int64_t correct = 0;
  double utility_adv = 0.0;
  double utility_def = 0.0;
};

struct SimResult {
  double mean_utility_adv = 0.0;
  double mean_utility_def = 0.0;
  // Sample standard deviation over trials / sqrt(trials); 0 for one trial.
  double std_error_adv = 0.0;
  double std_error_def = 0.0;
  std::vector<TrialRecord> trials;
};

// Trials run in parallel; each owns the substream seed-state + trial jumps,
// and aggregation is a fixed-order compensated sum, so the result does not
// depend on thread count.
SimResult Simulate(const GameSpec& spec, const Strategy& s, const Strategy& r,
                   const SimConfig& cfg);

struct ConvergenceReport {
  double analytic_adv = 0.0;
  double analytic_def = 0.0;
  double empirical_adv = 0.0;
  double empirical_def = 0.0;
  double std_error_adv = 0.0;
  double std_error_def = 0.0;
  bool pass_adv = false;
  bool pass_def = false;
  bool passed() const { return pass_adv && pass_def; }
};

inline constexpr double kConvergenceSigmas = 3.0;

// |empirical - analytic| <= 3 std_error (plus 1e-9 relative slack for
// zero-variance configurations).
ConvergenceReport CompareToAnalytic(const SimResult& sim, double analytic_adv,
                                    double analytic_def);

// Simulates and compares against the bilinear utilities evaluated at
// cfg.n and cfg.effective_r_max().
ConvergenceReport ConvergenceCheck(const GameSpec& spec, const Strategy& s,
                                   const Strategy& r, const SimConfig& cfg);

namespace reference {

// Serial reference for Simulate; bit-identical output.
SimResult Simulate(const GameSpec& spec, const Strategy& s, const Strategy& r,
                   const SimConfig& cfg);

}  // namespace reference
}  // namespace advgame

#endif  // ADVGAME_MC_SIMULATOR_H_
