#pragma once

#include <Eigen/Core>
#include <complex>

#include "apdec/common.hpp"

namespace apdec {

using cd = std::complex<double>;

inline bool is_pow2(i64 n) { return n > 0 && (n & (n - 1)) == 0; }

inline i64 next_pow2(i64 n) {
  i64 p = 1;
  while (p < n) p <<= 1;
  return p;
}

// DFT with kernel e(sign * x*xi / N): radix-2 iterative FFT for power-of-two
// sizes, table-driven naive transform otherwise. Unnormalized.
Eigen::ArrayXcd dft(const Eigen::ArrayXcd& x, int sign);

}  // namespace apdec
