#include "rheo/fab/slope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rheo/error.hpp"

namespace rheo {

namespace {

double slope_pct(const Point3& a, const Point3& b) {
  double run = std::hypot(b.x - a.x, b.z - a.z);
  double rise = std::abs(b.y - a.y);
  if (run < 1e-12) return std::numeric_limits<double>::infinity();
  return 100.0 * rise / run;
}

}  // namespace

SlopeReport slope_report(const DeckSurface& deck, double threshold_pct) {
  if (!(threshold_pct > 0) || !std::isfinite(threshold_pct)) {
    throw_invalid_argument("threshold_pct", "must be > 0");
  }
  if (deck.rows < 2 || deck.cols < 1) throw_invalid_argument("deck", "needs >= 2 rows");

  SlopeReport r;
  r.rows = deck.rows - 1;
  r.cols = deck.cols;
  r.threshold_pct = threshold_pct;
  r.slopes.resize(static_cast<std::size_t>(r.rows) * static_cast<std::size_t>(r.cols));
  for (int i = 0; i < r.rows; ++i) {
    for (int j = 0; j < r.cols; ++j) {
      double s = slope_pct(deck.at(i, j), deck.at(i + 1, j));
      r.slopes[static_cast<std::size_t>(i) * static_cast<std::size_t>(r.cols) +
               static_cast<std::size_t>(j)] = s;
      r.max_slope_pct = std::max(r.max_slope_pct, s);
    }
  }
  if (deck.cols > 1) {
    for (int i = 0; i < deck.rows; ++i) {
      for (int j = 0; j + 1 < deck.cols; ++j) {
        double s = slope_pct(deck.at(i, j), deck.at(i, j + 1));
        r.cross_slopes.push_back(s);
        r.max_cross_slope_pct = std::max(r.max_cross_slope_pct, s);
      }
    }
  }

  // Flood fill over flagged cells in row-major order.
  std::vector<char> seen(r.slopes.size(), 0);
  std::vector<std::pair<int, int>> stack;
  for (int i = 0; i < r.rows; ++i) {
    for (int j = 0; j < r.cols; ++j) {
      std::size_t id = static_cast<std::size_t>(i) * static_cast<std::size_t>(r.cols) +
                       static_cast<std::size_t>(j);
      if (seen[id] || !(r.slopes[id] >= threshold_pct)) continue;
      SlopeRegion reg{i, i, j, j};
      seen[id] = 1;
      stack.push_back({i, j});
      while (!stack.empty()) {
        auto [ci, cj] = stack.back();
        stack.pop_back();
        reg.i0 = std::min(reg.i0, ci);
        reg.i1 = std::max(reg.i1, ci);
        reg.j0 = std::min(reg.j0, cj);
        reg.j1 = std::max(reg.j1, cj);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int n = 0; n < 4; ++n) {
          int ni = ci + di[n], nj = cj + dj[n];
          if (ni < 0 || nj < 0 || ni >= r.rows || nj >= r.cols) continue;
          std::size_t nid = static_cast<std::size_t>(ni) * static_cast<std::size_t>(r.cols) +
                            static_cast<std::size_t>(nj);
          if (seen[nid] || !(r.slopes[nid] >= threshold_pct)) continue;
          seen[nid] = 1;
          stack.push_back({ni, nj});
        }
      }
      r.regions.push_back(reg);
    }
  }
  return r;
}

}  // namespace rheo
