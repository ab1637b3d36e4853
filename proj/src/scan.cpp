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

#include "arena/scan.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "arena/io_util.hpp"

namespace arena {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

// Published reference intervals the report is compared against.
const std::vector<Interval> kClaimRegionLow = {{0.0, 0.443443}};
const std::vector<Interval> kClaimRegionHigh = {{0.600600, 1.0}};

// Grid-point payoffs are short products of rationals: genuinely distinct
// values differ by at least ~1/(n-1)^2, while exact rational ties land
// within an ulp or two of each other. Treating sub-kTieTol differences as
// ties lets the strict/weak flag decide boundary points instead of the
// rounding direction.
bool nearly_equal(double a, double b) {
  return std::abs(a - b) <=
         kTieTol * std::max({1.0, std::abs(a), std::abs(b)});
}

bool strictly_greater(double a, double b) { return a > b && !nearly_equal(a, b); }

bool dominates(const CellPayoffs& p, const CellPayoffs& q) {
  const bool ge_a = p.a > q.a || nearly_equal(p.a, q.a);
  const bool ge_b = p.b > q.b || nearly_equal(p.b, q.b);
  return ge_a && ge_b &&
         (strictly_greater(p.a, q.a) || strictly_greater(p.b, q.b));
}

}  // namespace

CellTable cell_table(double x, double y, const PayoffTable& table) {
  CellTable ct;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double w = (r == 0 ? x : 1.0 - x) * (c == 0 ? y : 1.0 - y);
      ct.cell[r][c] = {w * table.alice[r][c], w * table.bob[r][c]};
    }
  }
  return ct;
}

PointClassification classify_point(double x, double y,
                                   const PayoffTable& table, bool strict) {
  check_unit_interval(x, "classify_point: x");
  check_unit_interval(y, "classify_point: y");
  validate_table(table);

  const CellTable ct = cell_table(x, y, table);
  PointClassification pc{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double cur_a = ct.cell[r][c].a;
      const double cur_b = ct.cell[r][c].b;
      const double dev_a = ct.cell[1 - r][c].a;
      const double dev_b = ct.cell[r][1 - c].b;
      pc.nash[r][c] =
          strict ? (strictly_greater(cur_a, dev_a) &&
                    strictly_greater(cur_b, dev_b))
                 : (!strictly_greater(dev_a, cur_a) &&
                    !strictly_greater(dev_b, cur_b));

      bool dominated = false;
      for (int i = 0; i < 2 && !dominated; ++i)
        for (int j = 0; j < 2 && !dominated; ++j)
          if (i != r || j != c)
            dominated = dominates(ct.cell[i][j], ct.cell[r][c]);
      pc.pareto[r][c] = !dominated;
    }
  }

  // Expected payoffs are bilinear, so each best response sits at an
  // interval end; evaluate both ends rather than assuming monotonicity.
  const double ea0 = pd_expected(0.0, y, table).first;
  const double ea1 = pd_expected(1.0, y, table).first;
  pc.best_response_a = strictly_greater(ea1, ea0)
                           ? 1.0
                           : (strictly_greater(ea0, ea1) ? 0.0 : 0.5);
  const double eb0 = pd_expected(x, 0.0, table).second;
  const double eb1 = pd_expected(x, 1.0, table).second;
  pc.best_response_b = strictly_greater(eb1, eb0)
                           ? 1.0
                           : (strictly_greater(eb0, eb1) ? 0.0 : 0.5);

  pc.degenerate = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
  return pc;
}

GridClassification scan(int n, const PayoffTable& table, bool strict) {
  if (n < 2) throw std::invalid_argument("scan: grid size must be >= 2");
  GridClassification grid;
  grid.n = n;
  grid.strict = strict;
  grid.points.reserve(static_cast<std::size_t>(n) * n);
  for (int ix = 0; ix < n; ++ix) {
    const double x = grid.value(ix);
    for (int iy = 0; iy < n; ++iy)
      grid.points.push_back(classify_point(x, grid.value(iy), table, strict));
  }
  return grid;
}

std::vector<Interval> extract_square_regions(
    const GridClassification& grid,
    const std::function<bool(const PointClassification&)>& predicate) {
  const int n = grid.n;
  // Integral image of the predicate for O(1) all-true square queries.
  std::vector<int> ps(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  auto at = [&](int i, int j) -> int& {
    return ps[static_cast<std::size_t>(i) * (n + 1) + j];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      at(i + 1, j + 1) = (predicate(grid.at(i, j)) ? 1 : 0) + at(i, j + 1) +
                         at(i + 1, j) - at(i, j);
  auto square_full = [&](int lo, int hi) {
    const int w = hi - lo + 1;
    const int sum =
        at(hi + 1, hi + 1) - at(lo, hi + 1) - at(hi + 1, lo) + at(lo, lo);
    return sum == w * w;
  };

  std::vector<int> hi_max(n, -1);
  for (int lo = 0; lo < n; ++lo) {
    if (!square_full(lo, lo)) continue;
    int a = lo, b = n - 1;
    while (a < b) {
      const int mid = (a + b + 1) / 2;
      if (square_full(lo, mid))
        a = mid;
      else
        b = mid - 1;
    }
    hi_max[lo] = a;
  }

  std::vector<Interval> out;
  for (int lo = 0; lo < n; ++lo) {
    if (hi_max[lo] < 0) continue;
    if (lo > 0 && hi_max[lo - 1] >= hi_max[lo]) continue;  // contained
    out.push_back({grid.value(lo), grid.value(hi_max[lo])});
  }
  return out;
}

std::vector<Interval> extract_square_regions(const GridClassification& grid,
                                             const CellPredicate& predicate) {
  return extract_square_regions(grid, [&](const PointClassification& pc) {
    return (!predicate.require_nash || pc.nash[predicate.row][predicate.col]) &&
           (!predicate.require_pareto ||
            pc.pareto[predicate.row][predicate.col]);
  });
}

namespace {

std::vector<bool> claim_agreement(const std::vector<Interval>& derived,
                                  const std::vector<Interval>& claims,
                                  double step) {
  const double tol = step + 1e-12;
  std::vector<bool> out;
  out.reserve(claims.size());
  for (const Interval& c : claims) {
    bool matched = false;
    for (const Interval& d : derived)
      if (std::abs(d.lo - c.lo) <= tol && std::abs(d.hi - c.hi) <= tol)
        matched = true;
    out.push_back(matched);
  }
  return out;
}

std::vector<Interval> concat(std::vector<Interval> a,
                             const std::vector<Interval>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

RegionReport build_region_report(const GridClassification& grid) {
  RegionReport report;
  report.n = grid.n;
  report.strict = grid.strict;
  const double step = 1.0 / static_cast<double>(grid.n - 1);
  const std::vector<Interval> both_claims =
      concat(kClaimRegionLow, kClaimRegionHigh);

  RegionEntry vv;
  vv.notion = "cell-wise";
  vv.predicate = "cell VV nash+pareto";
  vv.intervals = extract_square_regions(grid, CellPredicate{1, 1});
  vv.claim = kClaimRegionLow;
  vv.agreement = claim_agreement(vv.intervals, vv.claim, step);
  report.entries.push_back(std::move(vv));

  RegionEntry hh;
  hh.notion = "cell-wise";
  hh.predicate = "cell HH nash+pareto";
  hh.intervals = extract_square_regions(grid, CellPredicate{0, 0});
  hh.claim = kClaimRegionHigh;
  hh.agreement = claim_agreement(hh.intervals, hh.claim, step);
  report.entries.push_back(std::move(hh));

  RegionEntry any;
  any.notion = "cell-wise";
  any.predicate = "some cell nash+pareto";
  any.intervals =
      extract_square_regions(grid, [](const PointClassification& pc) {
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c)
            if (pc.nash[r][c] && pc.pareto[r][c]) return true;
        return false;
      });
  any.claim = both_claims;
  any.agreement = claim_agreement(any.intervals, any.claim, step);
  report.entries.push_back(std::move(any));

  RegionEntry cont;
  cont.notion = "continuous-best-response";
  cont.predicate = "mutual best response of the expected payoffs";
  for (int ix = 0; ix < grid.n; ++ix) {
    const double x = grid.value(ix);
    for (int iy = 0; iy < grid.n; ++iy) {
      const double y = grid.value(iy);
      const PointClassification& pc = grid.at(ix, iy);
      if (pc.best_response_a == x && pc.best_response_b == y) {
        cont.points.push_back({x, y});
        if (ix == iy) cont.intervals.push_back({x, x});
      }
    }
  }
  cont.claim = both_claims;
  cont.agreement = claim_agreement(cont.intervals, cont.claim, step);
  report.entries.push_back(std::move(cont));

  return report;
}

nlohmann::ordered_json RegionReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["strict"] = strict;
  j["entries"] = nlohmann::ordered_json::array();
  for (const RegionEntry& e : entries) {
    nlohmann::ordered_json je;
    je["notion"] = e.notion;
    je["predicate"] = e.predicate;
    je["intervals"] = nlohmann::ordered_json::array();
    for (const Interval& iv : e.intervals)
      je["intervals"].push_back({iv.lo, iv.hi});
    if (!e.points.empty()) {
      je["points"] = nlohmann::ordered_json::array();
      for (const auto& p : e.points) je["points"].push_back({p[0], p[1]});
    }
    je["paper_claim"] = nlohmann::ordered_json::array();
    for (const Interval& iv : e.claim)
      je["paper_claim"].push_back({iv.lo, iv.hi});
    je["agreement"] = e.agreement;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

std::string scan_csv(const GridClassification& grid) {
  static const char* kCellNames[2][2] = {{"HH", "HV"}, {"VH", "VV"}};
  std::string out = "x,y,cell,nash,pareto,degenerate\n";
  out.reserve(out.size() +
              static_cast<std::size_t>(grid.n) * grid.n * 4 * 40);
  char line[128];
  for (int ix = 0; ix < grid.n; ++ix) {
    const std::string xs = fmt12(grid.value(ix));
    for (int iy = 0; iy < grid.n; ++iy) {
      const std::string ys = fmt12(grid.value(iy));
      const PointClassification& pc = grid.at(ix, iy);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          std::snprintf(line, sizeof line, "%s,%s,%s,%d,%d,%d\n", xs.c_str(),
                        ys.c_str(), kCellNames[r][c], pc.nash[r][c] ? 1 : 0,
                        pc.pareto[r][c] ? 1 : 0, pc.degenerate ? 1 : 0);
          out += line;
        }
      }
    }
  }
  return out;
}

std::string heatmap_svg(const GridClassification& grid,
                        const CellPredicate& predicate) {
  const int n = grid.n;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    std::to_string(n) + " " + std::to_string(n) + "\">\n";
  svg += "<rect width=\"" + std::to_string(n) + "\" height=\"" +
         std::to_string(n) + "\" fill=\"#eef2f7\"/>\n";
  auto holds = [&](int ix, int iy) {
    const PointClassification& pc = grid.at(ix, iy);
    return (!predicate.require_nash || pc.nash[predicate.row][predicate.col]) &&
           (!predicate.require_pareto ||
            pc.pareto[predicate.row][predicate.col]);
  };
  // y axis points up: row iy is drawn at height n-1-iy.
  for (int iy = 0; iy < n; ++iy) {
    int ix = 0;
    while (ix < n) {
      if (!holds(ix, iy)) {
        ++ix;
        continue;
      }
      int run = ix;
      while (run < n && holds(run, iy)) ++run;
      svg += "<rect x=\"" + std::to_string(ix) + "\" y=\"" +
             std::to_string(n - 1 - iy) + "\" width=\"" +
             std::to_string(run - ix) + "\" height=\"1\" fill=\"#2b6cb0\"/>\n";
      ix = run;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace arena
