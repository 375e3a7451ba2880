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

#include "advgame/cli/commands.h"

#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "advgame/analytic_2x2.h"
#include "advgame/bimatrix_solver.h"
#include "advgame/cli/config.h"
#include "advgame/cli/region_map.h"
#include "advgame/mc_simulator.h"
#include "advgame/payoff_engine.h"

namespace advgame::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string spec_path;
  std::string format = "json";
  std::string out_path;
  double eps = kDefaultEps;
  int grid = 101;
  std::uint64_t seed = 0;

  // cases
  std::optional<double> s1;
  std::optional<double> r1;
  // ccr-curve, envelope
  int attack = 0;
  // region-map
  std::string map = "adversary";
  std::optional<double> mu_adv;
  std::optional<double> delta_mu_def;
  std::optional<double> r_max;
  std::vector<std::string> points;
  // simulate
  std::string s_probs;
  std::string r_probs;
  int trials = 100;
};

std::vector<double> ParseList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  return out;
}

json Vec(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

json Matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> ActionNames(const GameSpec& spec) {
  std::vector<std::string> names;
  for (const auto& a : spec.attacks) names.push_back(a.name());
  return names;
}

std::vector<std::string> ModelNames(const GameSpec& spec) {
  std::vector<std::string> names;
  for (const auto& m : spec.models) names.push_back(m.name);
  return names;
}

json AdversaryCasesJson(const AdversaryCaseSet& set) {
  json out = json::array();
  for (auto c : {AdversaryCase::kNeverAttack, AdversaryCase::kAlwaysAttack,
                 AdversaryCase::kIndifferent}) {
    if (set.Contains(c)) out.push_back(ToString(c));
  }
  return out;
}

json DefenderCasesJson(const DefenderCaseSet& set) {
  json out = json::array();
  for (auto c : {DefenderCase::kAlwaysDefend, DefenderCase::kNeverDefend,
                 DefenderCase::kIndifferent}) {
    if (set.Contains(c)) out.push_back(ToString(c));
  }
  return out;
}

json BestResponseJson(const BestResponseSet& br, const std::vector<std::string>& names) {
  if (br.any_mix) return {{"any_mix", true}};
  return {{"any_mix", false}, {"action", br.action},
          {"name", names[static_cast<std::size_t>(br.action)]}};
}

json CertificationJson(const Certification& c) {
  return {{"certified", c.certified},
          {"max_gain_def", c.max_gain_def},
          {"max_gain_adv", c.max_gain_adv}};
}

json EquilibriumJson(const EquilibriumResult& eq) {
  return {{"s", Vec(eq.s.probs())},
          {"r", Vec(eq.r.probs())},
          {"row_support", eq.row_support},
          {"col_support", eq.col_support},
          {"max_deviation_gain", eq.max_deviation_gain},
          {"degenerate", eq.degenerate}};
}

bool IsOrdered2x2(const GameSpec& spec) {
  return spec.num_models() == 2 && spec.num_actions() == 2 && CheckOrdering2x2(spec);
}

json AnalyticJson(const GameSpec& spec, const PayoffMatrices& m, double eps) {
  const AdversaryCaseSet adv = AdversaryPreconditions(spec);
  const DefenderCaseSet def = DefenderPreconditions(spec);
  const double threshold = DefendThreshold(spec);
  const double r_max = spec.economics.r_max;
  json out = {{"mu_adv", MuAdv(spec, kAttack)},
              {"delta_mu_def", DeltaMuDef(spec)},
              {"delta_acc", DeltaAcc(spec)},
              {"delta_rob", DeltaRob(spec)},
              {"adversary_preconditions", AdversaryCasesJson(adv)},
              {"defender_preconditions", DefenderCasesJson(def)},
              {"defend_threshold", threshold},
              {"r_max", r_max}};

  json summary = json::array();
  if (adv.size() == 1 && adv.Contains(AdversaryCase::kAlwaysAttack)) {
    summary.push_back("adversary always attacks, whatever model is deployed");
  } else if (adv.size() == 1 && adv.Contains(AdversaryCase::kNeverAttack)) {
    summary.push_back("adversary never attacks, whatever model is deployed");
  } else {
    summary.push_back("adversary's choice depends on the deployed model");
  }
  summary.push_back("defender deploys the hardened model for some adversary "
                    "strategy iff r_max >= " + FormatNumber(threshold) +
                    "; r_max = " + FormatNumber(r_max) +
                    (r_max >= threshold ? " (defend)" : " (do not defend)"));
  out["summary"] = std::move(summary);

  if (auto eq = MixedNash2x2(spec, eps)) {
    out["mixed_equilibrium"] = {
        {"s", Vec(eq->s_star.probs())},
        {"r", Vec(eq->r_star.probs())},
        {"unique", eq->unique},
        {"adversary_residual", eq->adversary_residual},
        {"defender_residual", eq->defender_residual},
        {"certification", CertificationJson(VerifyEquilibrium(m, eq->s_star, eq->r_star, eps))}};
  } else {
    out["mixed_equilibrium"] = nullptr;
  }
  return out;
}

class Command {
 public:
  Command(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void Emit(const json& doc) const { Write(doc.dump(2) + "\n"); }
  void Write(const std::string& text) const {
    if (opt_.out_path.empty()) {
      out_ << text;
    } else {
      WriteFile(opt_.out_path, text);
    }
  }
  bool Csv() const { return opt_.format == "csv"; }
  GameSpec Spec() const {
    if (opt_.spec_path.empty()) throw ParseError("--spec is required");
    return LoadSpec(opt_.spec_path);
  }
  void RequireJson(const char* name) const {
    if (Csv()) throw ParseError(std::string(name) + " supports only --format json");
  }

  int Validate() const {
    RequireJson("validate");
    if (opt_.spec_path.empty()) throw ParseError("--spec is required");
    const GameSpec spec = ParseSpecFile(opt_.spec_path);
    const ValidationReport report = ValidateSpec(spec);
    Emit({{"command", "validate"}, {"valid", report.ok()}, {"violations", report.violations}});
    return report.ok() ? kExitOk : kExitValidation;
  }

  int Solve() const {
    RequireJson("solve");
    const GameSpec spec = Spec();
    const PayoffMatrices m = ComputePayoffMatrices(spec);
    json doc = {{"command", "solve"},
                {"models", ModelNames(spec)},
                {"actions", ActionNames(spec)},
                {"tolerance", opt_.eps},
                {"payoff_matrices", {{"u_adv", Matrix(m.u_adv)}, {"u_def", Matrix(m.u_def)}}}};
    if (IsOrdered2x2(spec)) {
      doc["analytic"] = AnalyticJson(spec, m, opt_.eps);
    } else {
      doc["analytic"] = nullptr;
      doc["notice"] = "not an ordered 2x2 game (acc_1 > acc_2 > rob_2 > rob_1); "
                      "equilibria from support enumeration only";
    }
    json pure = json::array();
    for (const auto& [i, j] : PureEquilibria(m, opt_.eps)) {
      pure.push_back({{"model", i}, {"action", j}});
    }
    doc["pure_equilibria"] = std::move(pure);
    json all = json::array();
    for (const auto& eq : SupportEnumeration(m, opt_.eps)) all.push_back(EquilibriumJson(eq));
    doc["equilibria"] = std::move(all);
    Emit(doc);
    return kExitOk;
  }

  int Cases() const {
    RequireJson("cases");
    const GameSpec spec = Spec();
    Require2x2Ordered(spec);
    const PayoffMatrices m = ComputePayoffMatrices(spec);
    json doc = {{"command", "cases"}};
    doc["analytic"] = AnalyticJson(spec, m, opt_.eps);
    if (opt_.s1) {
      const Strategy s = Strategy::FromProbabilities({*opt_.s1, 1.0 - *opt_.s1});
      doc["adversary"] = {{"s1", *opt_.s1},
                          {"asr", AsrMixed(spec, s, kAttack)},
                          {"case", ToString(ClassifyAdversary(spec, s, opt_.eps))},
                          {"best_response", BestResponseJson(BestResponseAdv(spec, s, opt_.eps), ActionNames(spec))}};
    }
    if (opt_.r1) {
      const Strategy r = Strategy::FromProbabilities({*opt_.r1, 1.0 - *opt_.r1});
      doc["defender"] = {{"r1", *opt_.r1},
                         {"delta_ccr", DeltaCcr(spec, r)},
                         {"case", ToString(ClassifyDefender(spec, r, opt_.eps))},
                         {"best_response", BestResponseJson(BestResponseDef(spec, r, opt_.eps), ModelNames(spec))}};
    }
    Emit(doc);
    return kExitOk;
  }

  int CcrCurve() const {
    const GameSpec spec = Spec();
    CheckRealAttack(spec, opt_.attack);
    const double r_max = spec.economics.r_max;
    const int n = spec.num_models();
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < opt_.grid; ++k) {
      const double rho = k == opt_.grid - 1 ? r_max : r_max * k / (opt_.grid - 1);
      std::vector<double> row{rho};
      for (int i = 0; i < n; ++i) row.push_back(Ccr(spec, i, opt_.attack, rho));
      rows.push_back(std::move(row));
    }
    if (Csv()) {
      std::string text = "rho";
      for (const auto& m : spec.models) text += "," + m.name;
      text += "\n";
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          text += (c ? "," : "") + FormatNumber(row[c]);
        }
        text += "\n";
      }
      Write(text);
      return kExitOk;
    }
    json crossings = json::array();
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        const auto rho = CcrIntersection(spec, a, b, opt_.attack);
        if (!rho || *rho > r_max) continue;
        crossings.push_back({{"models", {a, b}},
                             {"names", {spec.models[static_cast<std::size_t>(a)].name,
                                        spec.models[static_cast<std::size_t>(b)].name}},
                             {"rho", *rho}});
      }
    }
    const EnvelopeSegments env = UpperEnvelopeCcr(spec, opt_.attack);
    json breaks = json::array();
    for (const auto& bp : env.interior) breaks.push_back(bp.rho);
    Emit({{"command", "ccr-curve"},
          {"attack", spec.attacks[static_cast<std::size_t>(opt_.attack)].name()},
          {"r_max", r_max},
          {"columns", [&] {
             std::vector<std::string> c{"rho"};
             for (const auto& m : spec.models) c.push_back(m.name);
             return c;
           }()},
          {"rows", rows},
          {"crossings", crossings},
          {"envelope_breakpoints", breaks}});
    return kExitOk;
  }

  int RegionMapCommand() const {
    MapParams params;
    if (opt_.map == "adversary") {
      params.kind = MapKind::kAdversary;
    } else if (opt_.map == "defender") {
      params.kind = MapKind::kDefender;
    } else {
      throw ParseError("--map must be 'adversary' or 'defender'");
    }
    std::optional<GameSpec> spec;
    if (!opt_.spec_path.empty()) spec = Spec();
    auto pick = [&](const std::optional<double>& flag, auto from_spec,
                    const char* name) {
      if (flag) return *flag;
      if (spec) return from_spec(*spec);
      throw ParseError(std::string("--") + name + " or --spec required");
    };
    if (params.kind == MapKind::kAdversary) {
      params.mu_adv = pick(opt_.mu_adv, [](const GameSpec& g) { return MuAdv(g, 0); }, "mu-adv");
    } else {
      params.delta_mu_def = pick(
          opt_.delta_mu_def,
          [](const GameSpec& g) { return MuDef(g, 0) - MuDef(g, g.num_models() - 1); },
          "delta-mu-def");
      params.r_max = pick(opt_.r_max, [](const GameSpec& g) { return g.economics.r_max; }, "r-max");
      if (!(params.r_max >= 0.0 && params.r_max <= 1.0)) throw RangeError("r_max out of [0,1]");
    }

    RegionMap map = Rasterize(params, opt_.grid);
    if (spec) map.overlays = SpecOverlays(*spec, params.kind);
    for (const auto& p : opt_.points) {
      const auto xy = ParseList(p, "--point");
      if (xy.size() != 2) throw ParseError("--point expects x,y");
      map.overlays.push_back({"point " + p, xy[0], xy[1], ""});
    }
    for (auto& o : map.overlays) o.label = LabelAt(params, o.x, o.y);

    if (Csv()) {
      std::string text = "x,y,case_label\n";
      for (const auto& c : map.cells) {
        text += FormatNumber(c.x) + "," + FormatNumber(c.y) + "," + c.label + "\n";
      }
      Write(text);
      return kExitOk;
    }
    json cells = json::array();
    for (const auto& c : map.cells) cells.push_back({c.x, c.y, c.label});
    json overlays = json::array();
    for (const auto& o : map.overlays) {
      overlays.push_back({{"name", o.name}, {"x", o.x}, {"y", o.y}, {"label", o.label}});
    }
    json doc = {{"command", "region-map"},
                {"map", opt_.map},
                {"grid", map.grid},
                {"cell_columns", {"x", "y", "case_label"}},
                {"cells", cells},
                {"overlays", overlays}};
    if (params.kind == MapKind::kAdversary) {
      doc["axes"] = {"rob_2", "rob_1"};
      doc["mu_adv"] = params.mu_adv;
    } else {
      doc["axes"] = {"delta_rob", "delta_acc"};
      doc["delta_mu_def"] = params.delta_mu_def;
      doc["r_max"] = params.r_max;
    }
    Emit(doc);
    return kExitOk;
  }

  int Dominance() const {
    RequireJson("dominance");
    const GameSpec spec = Spec();
    const PayoffMatrices m = ComputePayoffMatrices(spec);
    const auto models = ModelNames(spec);
    const auto actions = ActionNames(spec);
    auto report_json = [&](Player player) {
      const auto& names = player == Player::kDefender ? models : actions;
      json out = json::array();
      for (const auto& a : ComputeDominance(m, player, opt_.eps).actions) {
        json entry = {{"action", a.action},
                      {"name", names[static_cast<std::size_t>(a.action)]},
                      {"status", ToString(a.status)}};
        if (a.pure_dominator) {
          entry["pure_dominator"] = names[static_cast<std::size_t>(*a.pure_dominator)];
        }
        if (a.mixture) {
          entry["dominating_mixture"] = *a.mixture;
          entry["margin"] = a.margin;
        }
        out.push_back(std::move(entry));
      }
      return out;
    };
    const EliminationResult elim = IteratedElimination(m, opt_.eps);
    json trace = json::array();
    for (const auto& step : elim.trace) {
      const bool def = step.player == Player::kDefender;
      trace.push_back({{"round", step.round},
                       {"player", def ? "defender" : "adversary"},
                       {"action", step.action},
                       {"name", (def ? models : actions)[static_cast<std::size_t>(step.action)]},
                       {"status", ToString(step.status)}});
    }
    Emit({{"command", "dominance"},
          {"tolerance", opt_.eps},
          {"defender", report_json(Player::kDefender)},
          {"adversary", report_json(Player::kAdversary)},
          {"elimination", {{"trace", trace},
                           {"surviving_models", elim.surviving_rows},
                           {"surviving_actions", elim.surviving_cols}}}});
    return kExitOk;
  }

  int Envelope() const {
    const GameSpec spec = Spec();
    const EnvelopeSegments env = UpperEnvelopeCcr(spec, opt_.attack);
    const auto names = ModelNames(spec);
    if (Csv()) {
      std::string text = "from,to,model\n";
      for (std::size_t k = 0; k < env.segment_models.size(); ++k) {
        text += FormatNumber(env.breakpoints[k]) + "," + FormatNumber(env.breakpoints[k + 1]) +
                "," + names[static_cast<std::size_t>(env.segment_models[k])] + "\n";
      }
      Write(text);
      return kExitOk;
    }
    json segments = json::array();
    for (std::size_t k = 0; k < env.segment_models.size(); ++k) {
      segments.push_back({{"from", env.breakpoints[k]},
                          {"to", env.breakpoints[k + 1]},
                          {"model", env.segment_models[k]},
                          {"name", names[static_cast<std::size_t>(env.segment_models[k])]}});
    }
    json breaks = json::array();
    for (const auto& bp : env.interior) {
      json who = json::array();
      for (int i : bp.models) who.push_back(names[static_cast<std::size_t>(i)]);
      breaks.push_back({{"rho", bp.rho}, {"models", who}});
    }
    Emit({{"command", "envelope"},
          {"attack", spec.attacks[static_cast<std::size_t>(opt_.attack)].name()},
          {"r_max", spec.economics.r_max},
          {"segments", segments},
          {"breakpoints", breaks}});
    return kExitOk;
  }

  int Simulate() const {
    const GameSpec spec = Spec();
    if (opt_.s_probs.empty() || opt_.r_probs.empty()) {
      throw ParseError("simulate requires --s and --r");
    }
    const Strategy s = Strategy::FromProbabilities(ParseList(opt_.s_probs, "--s"));
    const Strategy r = Strategy::FromProbabilities(ParseList(opt_.r_probs, "--r"));
    CheckDefenderStrategy(spec, s);
    CheckAdversaryStrategy(spec, r);
    const SimConfig cfg = SimConfig::FromSpec(spec, opt_.seed, opt_.trials);
    const SimResult sim = advgame::Simulate(spec, s, r, cfg);
    if (Csv()) {
      std::string text = "trial,model,attacked,successes,correct,utility_adv,utility_def\n";
      for (std::size_t t = 0; t < sim.trials.size(); ++t) {
        const auto& rec = sim.trials[t];
        text += std::to_string(t) + "," + std::to_string(rec.model) + "," +
                std::to_string(rec.attacked) + "," + std::to_string(rec.successes) + "," +
                std::to_string(rec.correct) + "," + FormatNumber(rec.utility_adv) + "," +
                FormatNumber(rec.utility_def) + "\n";
      }
      Write(text);
      return kExitOk;
    }
    GameSpec realized = spec;
    realized.economics.r_max = cfg.effective_r_max();
    const ConvergenceReport check =
        CompareToAnalytic(sim, UtilityAdv(realized, s, r), UtilityDef(realized, s, r));
    json trials = json::array();
    for (const auto& rec : sim.trials) {
      trials.push_back({{"model", rec.model},
                        {"attacked", rec.attacked},
                        {"successes", rec.successes},
                        {"correct", rec.correct},
                        {"utility_adv", rec.utility_adv},
                        {"utility_def", rec.utility_def}});
    }
    Emit({{"command", "simulate"},
          {"config", {{"seed", cfg.seed}, {"n", cfg.n}, {"trials", cfg.trials},
                      {"r_max", cfg.r_max}, {"controlled_samples", cfg.controlled_samples()}}},
          {"s", Vec(s.probs())},
          {"r", Vec(r.probs())},
          {"mean_utility_adv", sim.mean_utility_adv},
          {"mean_utility_def", sim.mean_utility_def},
          {"std_error_adv", sim.std_error_adv},
          {"std_error_def", sim.std_error_def},
          {"analytic_utility_adv", check.analytic_adv},
          {"analytic_utility_def", check.analytic_def},
          {"sigmas", kConvergenceSigmas},
          {"converged", check.passed()},
          {"trials", trials}});
    return kExitOk;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

}  // namespace

std::string FormatNumber(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options opt;
  CLI::App app{"Solver for the adversarial classification game"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--spec", opt.spec_path, "Game configuration (JSON)");
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", opt.out_path, "Write the report here instead of stdout");
  app.add_option("--eps", opt.eps, "Indifference / verification tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid", opt.grid, "Grid points per axis")->check(CLI::Range(2, 1 << 20));
  app.add_option("--seed", opt.seed, "Simulation seed");

  auto* validate = app.add_subcommand("validate", "Check a configuration");
  auto* solve = app.add_subcommand("solve", "Best responses, thresholds and equilibria");
  auto* cases = app.add_subcommand("cases", "2x2 case preconditions and classification");
  cases->add_option("--s1", opt.s1, "Defender's probability of the standard model")
      ->check(CLI::Range(0.0, 1.0));
  cases->add_option("--r1", opt.r1, "Adversary's attack probability")->check(CLI::Range(0.0, 1.0));
  auto* curve = app.add_subcommand("ccr-curve", "CCR lines over the attack rate");
  curve->add_option("--attack", opt.attack, "Real attack index");
  auto* region = app.add_subcommand("region-map", "Rasterized case regions");
  region->add_option("--map", opt.map, "adversary | defender");
  region->add_option("--mu-adv", opt.mu_adv, "mu^adv for the adversary map");
  region->add_option("--delta-mu-def", opt.delta_mu_def, "Delta mu^def for the defender map");
  region->add_option("--r-max", opt.r_max, "r_max for the defender map");
  region->add_option("--point", opt.points, "Extra overlay point x,y");
  auto* dominance = app.add_subcommand("dominance", "Strict dominance and iterated elimination");
  auto* envelope = app.add_subcommand("envelope", "Upper envelope of net CCR lines");
  envelope->add_option("--attack", opt.attack, "Real attack index");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo realization of the game");
  simulate->add_option("--s", opt.s_probs, "Defender strategy, comma separated");
  simulate->add_option("--r", opt.r_probs, "Adversary strategy, comma separated");
  simulate->add_option("--trials", opt.trials, "Number of trials")->check(CLI::PositiveNumber);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  if (!argv_rev.empty()) argv_rev.pop_back();  // program name
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const Command cmd(opt, out);
  try {
    if (*validate) return cmd.Validate();
    if (*solve) return cmd.Solve();
    if (*cases) return cmd.Cases();
    if (*curve) return cmd.CcrCurve();
    if (*region) return cmd.RegionMapCommand();
    if (*dominance) return cmd.Dominance();
    if (*envelope) return cmd.Envelope();
    if (*simulate) return cmd.Simulate();
  } catch (const ValidationError& e) {
    err << "validation failed:\n";
    for (const auto& v : e.violations()) err << "  - " << v << "\n";
    return kExitValidation;
  } catch (const GuardError& e) {
    err << "solver guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace advgame::cli
