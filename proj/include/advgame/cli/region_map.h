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

#ifndef ADVGAME_CLI_REGION_MAP_H_
#define ADVGAME_CLI_REGION_MAP_H_

// Rasterized case maps for the 2x2 game.
//
// Adversary map: x = rob_2, y = rob_1 for a fixed mu^adv. Cells with
// rob_1 >= rob_2 violate the ordering and are "invalid".
// Defender map: x = Delta rob, y = Delta acc for fixed Delta mu^def and
// r_max. Cells with Delta acc + Delta rob >= 1, Delta acc <= 0 or
// Delta rob <= 0 are "invalid".
//
// A cell's label names the satisfiable cases: "case3_possible" /
// "caseC_possible" when the indifferent case is reachable, otherwise the
// single (or '+'-joined) satisfiable pure cases.

#include <string>
#include <vector>

#include "advgame/analytic_2x2.h"

namespace advgame::cli {

enum class MapKind { kAdversary, kDefender };

struct MapParams {
  MapKind kind = MapKind::kAdversary;
  double mu_adv = 0.0;
  double delta_mu_def = 0.0;
  double r_max = 1.0;
};

struct MapCell {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct OverlayPoint {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct RegionMap {
  MapParams params;
  int grid = 0;
  std::vector<MapCell> cells;  // row-major: y outer, x inner
  std::vector<OverlayPoint> overlays;
};

std::string AdversaryLabel(const AdversaryCaseSet& set);
std::string DefenderLabel(const DefenderCaseSet& set);

// Label of a single point under the map's parameters.
std::string LabelAt(const MapParams& params, double x, double y);

// grid >= 2 points per axis over [0, 1]; cells are filled in parallel.
RegionMap Rasterize(const MapParams& params, int grid);

// One overlay per model k >= 1, paired against model 0 on attack 0.
std::vector<OverlayPoint> SpecOverlays(const GameSpec& spec, MapKind kind);

namespace reference {
RegionMap Rasterize(const MapParams& params, int grid);
}  // namespace reference

}  // namespace advgame::cli

#endif  // ADVGAME_CLI_REGION_MAP_H_
