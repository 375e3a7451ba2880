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

#include "advgame/cli/region_map.h"

namespace advgame::cli {
namespace {

void CheckGrid(int grid) {
  if (grid < 2) throw RangeError("grid resolution must be >= 2");
}

double Axis(int k, int grid) {
  return k == grid - 1 ? 1.0 : static_cast<double>(k) / (grid - 1);
}

}  // namespace

std::string AdversaryLabel(const AdversaryCaseSet& set) {
  if (set.Contains(AdversaryCase::kIndifferent)) return "case3_possible";
  std::string out;
  if (set.Contains(AdversaryCase::kNeverAttack)) out = "case1";
  if (set.Contains(AdversaryCase::kAlwaysAttack)) out += out.empty() ? "case2" : "+case2";
  return out.empty() ? "none" : out;
}

std::string DefenderLabel(const DefenderCaseSet& set) {
  if (set.Contains(DefenderCase::kIndifferent)) return "caseC_possible";
  std::string out;
  if (set.Contains(DefenderCase::kAlwaysDefend)) out = "caseA";
  if (set.Contains(DefenderCase::kNeverDefend)) out += out.empty() ? "caseB" : "+caseB";
  return out.empty() ? "none" : out;
}

std::string LabelAt(const MapParams& params, double x, double y) {
  if (params.kind == MapKind::kAdversary) {
    const double rob2 = x, rob1 = y;
    if (rob1 >= rob2) return "invalid";
    return AdversaryLabel(AdversaryPreconditionsFrom(rob1, rob2, params.mu_adv));
  }
  const double delta_rob = x, delta_acc = y;
  if (delta_acc + delta_rob >= 1.0 || delta_acc <= 0.0 || delta_rob <= 0.0) {
    return "invalid";
  }
  return DefenderLabel(DefenderPreconditionsFrom(
      delta_acc, delta_rob, params.delta_mu_def, params.r_max));
}

RegionMap Rasterize(const MapParams& params, int grid) {
  CheckGrid(grid);
  RegionMap map{params, grid, std::vector<MapCell>(static_cast<std::size_t>(grid) * grid), {}};
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const double x = Axis(ix, grid), y = Axis(iy, grid);
      map.cells[static_cast<std::size_t>(iy) * grid + ix] = {x, y, LabelAt(params, x, y)};
    }
  }
  return map;
}

namespace reference {

RegionMap Rasterize(const MapParams& params, int grid) {
  CheckGrid(grid);
  RegionMap map{params, grid, {}, {}};
  map.cells.reserve(static_cast<std::size_t>(grid) * grid);
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const double x = Axis(ix, grid), y = Axis(iy, grid);
      map.cells.push_back({x, y, LabelAt(params, x, y)});
    }
  }
  return map;
}

}  // namespace reference

std::vector<OverlayPoint> SpecOverlays(const GameSpec& spec, MapKind kind) {
  std::vector<OverlayPoint> out;
  const double acc0 = spec.models[0].acc;
  const double rob0 = spec.robustness(0, 0);
  for (int k = 1; k < spec.num_models(); ++k) {
    const auto& model = spec.models[static_cast<std::size_t>(k)];
    OverlayPoint p;
    p.name = spec.models[0].name + " vs " + model.name;
    if (kind == MapKind::kAdversary) {
      p.x = spec.robustness(k, 0);  // rob_2: hardened model
      p.y = rob0;                   // rob_1: standard model
    } else {
      p.x = spec.robustness(k, 0) - rob0;
      p.y = acc0 - model.acc;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace advgame::cli
