#pragma once

#include <string>
#include <vector>

#include "apdec/common.hpp"

namespace apdec {

struct SetResult {
  std::vector<i64> elements;  // sorted, within [1, ambient]
  i64 ambient = 0;
  std::string kind;
  bool verified_3ap_free = false;
};

// {1 + sum_i b_i base^i : b in {0,1}^digits}: digit sums never carry for
// base >= 3, so the set is 3-AP-free; verified exhaustively for small N.
SetResult make_salem_spencer(int base, int digits);

// Sphere-shell construction: vectors in {0..side-1}^d on the most popular
// radius shell, mapped without carries in base 2*side-1.
SetResult make_behrend(int d, int side);

SetResult make_random(i64 n, double density, u64 seed);
SetResult make_interval(i64 n);

// Exhaustive pair check (midpoint membership); input must be sorted.
bool is_3ap_free(const std::vector<i64>& sorted_elements);

}  // namespace apdec
