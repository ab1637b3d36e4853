// Copyright 2026 The photon-arena Authors
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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/engine.hpp"

namespace arena {

/// Payoff differences within this relative tolerance count as ties, so
/// exact rational ties at grid points (where products only wobble by an
/// ulp) are decided by the strict/weak flag, not by rounding direction.
/// Genuinely distinct grid payoffs differ by >= ~1/(n-1)^2, far above it.
inline constexpr double kTieTol = 1e-9;

struct CellPayoffs {
  double a = 0.0;
  double b = 0.0;
};

/// Probability-weighted outcome table at one strategy point: entry (r, c)
/// is weight (r==H ? x : 1-x)(c==H ? y : 1-y) times the payoff pair.
struct CellTable {
  CellPayoffs cell[2][2];
};

CellTable cell_table(double x, double y, const PayoffTable& table);

struct PointClassification {
  bool nash[2][2];
  bool pareto[2][2];
  double best_response_a;  ///< x maximizing Alice's expected payoff at this y
  double best_response_b;  ///< y maximizing Bob's expected payoff at this x
  bool degenerate;         ///< x or y lies on {0, 1}
};

/// Cell-wise classification of the weighted table. With strict = true a
/// cell is an equilibrium only if every unilateral deviation is strictly
/// worse for the deviator; weak mode tolerates ties. Pareto flags mark
/// cells no other cell weakly dominates. Best responses are computed by
/// maximizing the bilinear expected payoff over the interval ends (0.5
/// reported on indifference).
PointClassification classify_point(double x, double y,
                                   const PayoffTable& table, bool strict);

struct GridClassification {
  int n = 0;
  bool strict = true;
  std::vector<PointClassification> points;  // index ix * n + iy

  double value(int i) const {
    return static_cast<double>(i) / static_cast<double>(n - 1);
  }
  const PointClassification& at(int ix, int iy) const {
    return points[static_cast<std::size_t>(ix) * n + iy];
  }
};

/// Classifies the (n x n) grid x_i = y_i = i / (n - 1). n >= 2.
GridClassification scan(
    int n, const PayoffTable& table = PayoffTable::prisoners_dilemma(),
    bool strict = true);

struct CellPredicate {
  int row = 0;
  int col = 0;
  bool require_nash = true;
  bool require_pareto = true;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximal intervals [lo, hi] (as grid values) such that the predicate
/// holds at every grid point of the square [lo, hi]^2.
std::vector<Interval> extract_square_regions(
    const GridClassification& grid,
    const std::function<bool(const PointClassification&)>& predicate);
std::vector<Interval> extract_square_regions(const GridClassification& grid,
                                             const CellPredicate& predicate);

struct RegionEntry {
  std::string notion;
  std::string predicate;
  std::vector<Interval> intervals;
  std::vector<std::array<double, 2>> points;  // continuous notion only
  std::vector<Interval> claim;
  std::vector<bool> agreement;  // one flag per claim interval
};

/// Derived equilibrium regions under both documented notions, each next
/// to the published reference intervals [0, 0.443443] and [0.600600, 1]
/// with per-claim agreement flags (endpoints within one grid step).
/// Agreement is reported, never forced.
struct RegionReport {
  int n = 0;
  bool strict = true;
  std::vector<RegionEntry> entries;

  nlohmann::ordered_json to_json() const;
};

RegionReport build_region_report(const GridClassification& grid);

/// One row per point per cell: `x,y,cell,nash,pareto,degenerate`, x-major
/// then y, cells ordered HH,HV,VH,VV, numbers at 12 significant digits.
std::string scan_csv(const GridClassification& grid);

/// Static heatmap: filled cells where the predicate holds. Row runs are
/// merged, so files stay small even at n = 1000.
std::string heatmap_svg(const GridClassification& grid,
                        const CellPredicate& predicate);

}  // namespace arena
