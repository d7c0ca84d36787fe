#include "apdec/sets.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "apdec/rng.hpp"

namespace apdec {

bool is_3ap_free(const std::vector<i64>& sorted_elements) {
  std::unordered_set<i64> members(sorted_elements.begin(),
                                  sorted_elements.end());
  for (size_t i = 0; i < sorted_elements.size(); ++i) {
    for (size_t j = i + 1; j < sorted_elements.size(); ++j) {
      i64 a = sorted_elements[i], c = sorted_elements[j];
      if ((a + c) % 2 != 0) continue;
      if (members.count((a + c) / 2)) return false;
    }
  }
  return true;
}

SetResult make_salem_spencer(int base, int digits) {
  if (base < 3 || base > 10 || digits < 1 || digits > 16)
    throw ParamOutOfRange("salem_spencer: need base in [3,10], digits in [1,16]");
  SetResult res;
  res.kind = "salem-spencer";
  i64 ambient = 1;
  for (int i = 0; i < digits; ++i) ambient *= base;
  res.ambient = ambient;
  for (i64 mask = 0; mask < (i64(1) << digits); ++mask) {
    i64 v = 0, p = 1;
    for (int i = 0; i < digits; ++i) {
      if (mask & (i64(1) << i)) v += p;
      p *= base;
    }
    res.elements.push_back(1 + v);
  }
  std::sort(res.elements.begin(), res.elements.end());
  if (ambient <= 100000) res.verified_3ap_free = is_3ap_free(res.elements);
  return res;
}

SetResult make_behrend(int d, int side) {
  if (d < 1 || d > 8 || side < 2)
    throw ParamOutOfRange("behrend: need d in [1,8], side >= 2");
  double total = 1;
  for (int i = 0; i < d; ++i) total *= double(side);
  if (total > 2e6) throw ParamOutOfRange("behrend: side^d too large");

  // Bucket lattice points by squared radius, keep the most popular shell.
  std::map<i64, std::vector<std::vector<int>>> shells;
  std::vector<int> v(size_t(d), 0);
  while (true) {
    i64 r2 = 0;
    for (int x : v) r2 += i64(x) * x;
    shells[r2].push_back(v);
    int pos = 0;
    while (pos < d && ++v[size_t(pos)] == side) v[size_t(pos++)] = 0;
    if (pos == d) break;
  }
  const std::vector<std::vector<int>>* best = nullptr;
  for (const auto& [r2, pts] : shells)
    if (!best || pts.size() > best->size()) best = &pts;

  SetResult res;
  res.kind = "behrend";
  i64 radix = 2 * i64(side) - 1;
  i64 ambient = 1;
  for (int i = 0; i < d; ++i) ambient *= radix;
  res.ambient = ambient;
  for (const auto& pt : *best) {
    i64 val = 0, p = 1;
    for (int i = 0; i < d; ++i) {
      val += i64(pt[size_t(i)]) * p;
      p *= radix;
    }
    res.elements.push_back(1 + val);
  }
  std::sort(res.elements.begin(), res.elements.end());
  if (res.ambient <= 100000 && res.elements.size() <= 4096)
    res.verified_3ap_free = is_3ap_free(res.elements);
  return res;
}

SetResult make_random(i64 n, double density, u64 seed) {
  if (n < 1 || density < 0.0 || density > 1.0)
    throw ParamOutOfRange("random set: need n >= 1, density in [0,1]");
  SetResult res;
  res.kind = "random";
  res.ambient = n;
  Rng rng(seed);
  for (i64 x = 1; x <= n; ++x)
    if (rng.next_double() < density) res.elements.push_back(x);
  return res;
}

SetResult make_interval(i64 n) {
  if (n < 1) throw ParamOutOfRange("interval: n >= 1");
  SetResult res;
  res.kind = "interval";
  res.ambient = n;
  for (i64 x = 1; x <= n; ++x) res.elements.push_back(x);
  return res;
}

}  // namespace apdec
