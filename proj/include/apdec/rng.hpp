#pragma once

#include <cstdint>

#include "apdec/common.hpp"

namespace apdec {

// SplitMix64. Hand-rolled so that seeded runs are bit-identical across
// platforms and standard library versions (std::uniform_real_distribution
// gives no such guarantee).
class Rng {
 public:
  explicit Rng(u64 seed) : state_(seed) {}

  u64 next_u64() {
    u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1); 53 random bits.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive. Rejection-free modulo; the bias
  // for the ranges used here (< 2^32) is far below any test tolerance.
  i64 next_i64(i64 lo, i64 hi) {
    u64 span = u64(hi - lo) + 1;
    return lo + i64(next_u64() % span);
  }

  bool next_bool() { return (next_u64() & 1) != 0; }

  // Independent derived stream; used to give each fixture its own generator.
  Rng fork(u64 stream) {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    r.next_u64();
    return r;
  }

 private:
  u64 state_;
};

}  // namespace apdec
