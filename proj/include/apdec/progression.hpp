#pragma once

#include <vector>

#include "apdec/common.hpp"

namespace apdec {

// Arithmetic progression {start + step*i : i = 1..length} inside [1, ambient_n].
// 1-indexed throughout, matching [N] = {1,...,N}.
struct Progression {
  i64 start = 0;
  i64 step = 1;
  i64 length = 1;
  i64 ambient_n = 1;

  i64 element(i64 i) const { return start + step * i; }  // i in [1, length]
  i64 first() const { return start + step; }
  i64 last() const { return start + step * length; }

  bool in_ambient() const {
    return step >= 1 && length >= 1 && first() >= 1 && last() <= ambient_n;
  }
};

struct Decomposition {
  std::vector<Progression> parts;
  i64 ambient_n = 1;
  // Per input polynomial (or sequence): the bound the algorithm certifies and
  // the exhaustively measured max mod-1 (or metric) diameter over all parts.
  std::vector<double> certified_diameter;
  std::vector<double> measured_diameter;
  i64 min_length = 1;
};

// Exact cover test: parts are pairwise disjoint and union to [1, N].
inline bool is_exact_partition(const std::vector<Progression>& parts, i64 n) {
  std::vector<char> hit(size_t(n) + 1, 0);
  for (const auto& p : parts) {
    if (p.step < 1 || p.length < 1) return false;
    for (i64 i = 1; i <= p.length; ++i) {
      i64 x = p.element(i);
      if (x < 1 || x > n || hit[size_t(x)]) return false;
      hit[size_t(x)] = 1;
    }
  }
  for (i64 x = 1; x <= n; ++x)
    if (!hit[size_t(x)]) return false;
  return true;
}

}  // namespace apdec
