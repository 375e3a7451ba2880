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

#include "advgame/mc_simulator.h"

#include <cmath>

#include "advgame/payoff_engine.h"
#include "advgame/rng.h"

namespace advgame {
namespace {

// Index of the first action whose cumulative probability exceeds u.
int Draw(const Strategy& p, double u) {
  double cumulative = 0.0;
  int last_positive = 0;
  for (int k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    last_positive = k;
    cumulative += p[k];
    if (u < cumulative) return k;
  }
  return last_positive;
}

void CheckInputs(const GameSpec& spec, const Strategy& s, const Strategy& r,
                 const SimConfig& cfg) {
  RequireValid(spec);
  CheckDefenderStrategy(spec, s);
  CheckAdversaryStrategy(spec, r);
  if (cfg.trials < 1) throw RangeError("trials must be >= 1");
  if (cfg.n < 1) throw RangeError("n must be >= 1");
  if (!(cfg.r_max >= 0.0 && cfg.r_max <= 1.0)) {
    throw RangeError("r_max out of [0,1]");
  }
}

TrialRecord RunTrial(const GameSpec& spec, const Strategy& s,
                     const Strategy& r, const SimConfig& cfg, Xoshiro256 rng) {
  const EconomicParams& e = spec.economics;
  const int model = Draw(s, rng.Uniform());
  const double acc = spec.models[static_cast<std::size_t>(model)].acc;
  const int no_attack = spec.no_attack_index();
  const std::int64_t controlled = cfg.controlled_samples();

  std::vector<std::int64_t> attacked(static_cast<std::size_t>(no_attack), 0);
  std::vector<std::int64_t> successes(static_cast<std::size_t>(no_attack), 0);
  std::int64_t correct = 0;
  for (std::int64_t k = 0; k < cfg.n; ++k) {
    const double u_action = rng.Uniform();
    const double u_outcome = rng.Uniform();
    const int action = k < controlled ? Draw(r, u_action) : no_attack;
    if (action == no_attack) {
      if (u_outcome < acc) ++correct;
      continue;
    }
    ++attacked[static_cast<std::size_t>(action)];
    if (u_outcome < spec.robustness(model, action)) {
      ++correct;
    } else {
      ++successes[static_cast<std::size_t>(action)];
    }
  }

  TrialRecord rec;
  rec.model = model;
  rec.correct = correct;
  rec.utility_adv = -e.i_adv;
  for (int j = 0; j < no_attack; ++j) {
    const auto a = attacked[static_cast<std::size_t>(j)];
    const auto w = successes[static_cast<std::size_t>(j)];
    rec.attacked += a;
    rec.successes += w;
    rec.utility_adv += static_cast<double>(w) * e.r_plus_adv -
                       static_cast<double>(a - w) * e.r_minus_adv -
                       static_cast<double>(a) *
                           spec.attacks[static_cast<std::size_t>(j)].ongoing_cost();
  }
  rec.utility_def =
      -e.i_def -
      static_cast<double>(cfg.n) * spec.models[static_cast<std::size_t>(model)].ongoing_cost +
      static_cast<double>(correct) * e.r_plus_def -
      static_cast<double>(cfg.n - correct) * e.r_minus_def;
  return rec;
}

std::vector<Xoshiro256> TrialStreams(const SimConfig& cfg) {
  std::vector<Xoshiro256> streams;
  streams.reserve(static_cast<std::size_t>(cfg.trials));
  Xoshiro256 rng(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    streams.push_back(rng);
    rng.Jump();
  }
  return streams;
}

class KahanSum {
 public:
  void Add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void Aggregate(SimResult& result) {
  const auto count = static_cast<double>(result.trials.size());
  KahanSum adv, def;
  for (const TrialRecord& t : result.trials) {
    adv.Add(t.utility_adv);
    def.Add(t.utility_def);
  }
  result.mean_utility_adv = adv.value() / count;
  result.mean_utility_def = def.value() / count;
  if (result.trials.size() < 2) return;
  KahanSum adv_sq, def_sq;
  for (const TrialRecord& t : result.trials) {
    const double da = t.utility_adv - result.mean_utility_adv;
    const double dd = t.utility_def - result.mean_utility_def;
    adv_sq.Add(da * da);
    def_sq.Add(dd * dd);
  }
  result.std_error_adv = std::sqrt(adv_sq.value() / (count - 1.0) / count);
  result.std_error_def = std::sqrt(def_sq.value() / (count - 1.0) / count);
}

}  // namespace

SimConfig SimConfig::FromSpec(const GameSpec& spec, std::uint64_t seed,
                              int trials) {
  return {seed, spec.economics.n, trials, spec.economics.r_max};
}

std::int64_t SimConfig::controlled_samples() const {
  // The slack absorbs representation error in products like 1e4 * 0.3.
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) * r_max + 1e-9));
}

double SimConfig::effective_r_max() const {
  return static_cast<double>(controlled_samples()) / static_cast<double>(n);
}

SimResult Simulate(const GameSpec& spec, const Strategy& s, const Strategy& r,
                   const SimConfig& cfg) {
  CheckInputs(spec, s, r, cfg);
  const std::vector<Xoshiro256> streams = TrialStreams(cfg);
  SimResult result;
  result.trials.resize(static_cast<std::size_t>(cfg.trials));
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < cfg.trials; ++t) {
    result.trials[static_cast<std::size_t>(t)] =
        RunTrial(spec, s, r, cfg, streams[static_cast<std::size_t>(t)]);
  }
  Aggregate(result);
  return result;
}

namespace reference {

SimResult Simulate(const GameSpec& spec, const Strategy& s, const Strategy& r,
                   const SimConfig& cfg) {
  CheckInputs(spec, s, r, cfg);
  SimResult result;
  Xoshiro256 rng(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    result.trials.push_back(RunTrial(spec, s, r, cfg, rng));
    rng.Jump();
  }
  Aggregate(result);
  return result;
}

}  // namespace reference

ConvergenceReport CompareToAnalytic(const SimResult& sim, double analytic_adv,
                                    double analytic_def) {
  ConvergenceReport rep;
  rep.analytic_adv = analytic_adv;
  rep.analytic_def = analytic_def;
  rep.empirical_adv = sim.mean_utility_adv;
  rep.empirical_def = sim.mean_utility_def;
  rep.std_error_adv = sim.std_error_adv;
  rep.std_error_def = sim.std_error_def;
  auto within = [](double emp, double ana, double se) {
    const double slack = 1e-9 * std::max(1.0, std::abs(ana));
    return std::abs(emp - ana) <= kConvergenceSigmas * se + slack;
  };
  rep.pass_adv = within(rep.empirical_adv, analytic_adv, rep.std_error_adv);
  rep.pass_def = within(rep.empirical_def, analytic_def, rep.std_error_def);
  return rep;
}

ConvergenceReport ConvergenceCheck(const GameSpec& spec, const Strategy& s,
                                   const Strategy& r, const SimConfig& cfg) {
  const SimResult sim = Simulate(spec, s, r, cfg);
  GameSpec realized = spec;
  realized.economics.n = cfg.n;
  realized.economics.r_max = cfg.effective_r_max();
  return CompareToAnalytic(sim, UtilityAdv(realized, s, r),
                           UtilityDef(realized, s, r));
}

}  // namespace advgame
