#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "apdec/common.hpp"

namespace apdec {

// Distance on R/Z between two residues in [0, 1).
inline double circle_dist(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

// Max pairwise circle distance of a finite residue set (all values in [0,1)).
// Sorted-gap shortcut when the set fits in a half-circle arc; otherwise an
// antipode search per point.
inline double circle_diameter(std::vector<double> vals) {
  const size_t m = vals.size();
  if (m <= 1) return 0.0;
  std::sort(vals.begin(), vals.end());
  double max_gap = 1.0 - vals.back() + vals.front();
  for (size_t i = 0; i + 1 < m; ++i)
    max_gap = std::max(max_gap, vals[i + 1] - vals[i]);
  double arc = 1.0 - max_gap;
  if (arc <= 0.5) return arc < 0 ? 0.0 : arc;

  // Spread set: the farthest point from x is the one nearest its antipode.
  std::vector<double> ext(vals);
  ext.reserve(2 * m);
  for (size_t i = 0; i < m; ++i) ext.push_back(vals[i] + 1.0);
  double best = 0.0;
  for (size_t i = 0; i < m; ++i) {
    double target = vals[i] + 0.5;
    auto it = std::lower_bound(ext.begin(), ext.end(), target);
    for (int off = -1; off <= 0; ++off) {
      auto jt = it + off;
      if (jt < ext.begin() || jt >= ext.end()) continue;
      double d = *jt - vals[i];
      if (d < 0) d = -d;
      if (d >= 1.0) d -= 1.0;
      best = std::max(best, std::min(d, 1.0 - d));
    }
  }
  return best;
}

}  // namespace apdec
