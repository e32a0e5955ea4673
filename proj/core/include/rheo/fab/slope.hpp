#pragma once

#include <vector>

#include "rheo/span/deck.hpp"

namespace rheo {

// Inclusive index rectangle over the slope grid.
struct SlopeRegion {
  int i0 = 0, i1 = 0;  // along u
  int j0 = 0, j1 = 0;  // across (v)
};

// Walking slope between consecutive deck rows, in percent. Entry (i, j) is
// the step from row i to row i + 1 at column j, so the grid is
// (rows - 1) x cols. A zero horizontal step gives +infinity.
struct SlopeReport {
  int rows = 0;
  int cols = 0;
  std::vector<double> slopes;
  // Across-the-deck slope between columns j and j + 1, rows x (cols - 1).
  std::vector<double> cross_slopes;
  double max_slope_pct = 0.0;
  double max_cross_slope_pct = 0.0;
  double threshold_pct = 0.0;
  // Bounding rectangles of 4-connected runs of cells at or above threshold.
  std::vector<SlopeRegion> regions;

  double at(int i, int j) const {
    return slopes[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                  static_cast<std::size_t>(j)];
  }
};

SlopeReport slope_report(const DeckSurface& deck, double threshold_pct);

}  // namespace rheo
