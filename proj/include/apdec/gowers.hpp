#pragma once

#include <Eigen/Core>
#include <complex>
#include <span>
#include <vector>

#include "apdec/fft.hpp"
#include "apdec/rational.hpp"

namespace apdec {

enum class Domain { interval, cyclic };

// Finite complex-valued function on [N] (index i holds f(i+1)) or Z/NZ
// (index i holds f(i)).
struct GridFunction {
  Eigen::ArrayXcd values;
  Domain domain = Domain::interval;
  bool one_bounded = false;

  i64 n() const { return values.size(); }
  void check_bound() const {
    if (!one_bounded) return;
    for (i64 i = 0; i < values.size(); ++i)
      if (std::abs(values[i]) > 1.0 + 1e-12)
        throw ConfigInvalid("GridFunction: 1-bounded flag violated");
  }
};

struct GowersBudget {
  double max_direct_ops = 3e8;   // N^s cap for the direct sums
  i64 u2_direct_cap = 8192;      // direct U^2 below, Fourier route above
};

// ||f||_{U^s(Z/NZ)} by the direct multiplicative-derivative average.
// For s = 2 above the direct cap, the Fourier route (an exact identity) is
// used; beyond the budget with no fast path this throws Infeasible.
double gowers_norm_cyclic(const Eigen::ArrayXcd& f, int s,
                          const GowersBudget& budget = {});

// The U^2 Fourier formula (sum_xi |fhat|^4)^{1/4} with expectation-normalized
// coefficients; exact identity with the direct sum.
double gowers_u2_fourier(const Eigen::ArrayXcd& f);

// ||f||_{U^s[N]}: zero-extend to Z/NtildeZ (Ntilde >= 2^s N; a power of two
// is chosen when ntilde == 0) and normalize by the interval indicator.
double gowers_norm_interval(const Eigen::ArrayXcd& f, int s, i64 ntilde = 0,
                            const GowersBudget& budget = {});

// Lambda_k(f_1,...,f_k) = E_{x,y in {0..N}} prod_j f_j(x + (j-1)y), functions
// extended by zero outside [N]. values[i] = f(i+1).
cd ap_operator(std::span<const Eigen::ArrayXcd> fs);
double ap_operator_real(std::span<const Eigen::ArrayXcd> fs);

// Exact rational route for rational-valued inputs.
Rat ap_operator_exact(std::span<const std::vector<Rat>> fs);

// Integer count of the same double sum for an indicator in every slot:
// #{(x,y) in {0..N}^2 : x + (j-1)y in A for all j}. Lambda_k = count/(N+1)^2.
i64 ap_count_indicator(const std::vector<char>& membership, int k);

struct VonNeumannReport {
  double lambda = 0.0;        // |Lambda_k|
  double l1_bound = 0.0;      // min_i ||f_i||_{L^1[N]} prod_{j!=i} ||f_j||_inf
  bool l1_ok = false;         // lambda <= l1_bound + 1e-12 (constant exactly 1)
  bool u_side_computed = false;
  double u_bound = 0.0;       // min_i ||f_i||_{U^{k-1}[N]} prod ||f_j||_inf
  double ratio = 0.0;         // lambda / u_bound when computed
};

// Checks the L^1 inequality with constant 1 and reports the empirical
// U^{k-1} ratio (the implicit constant is monitored, never asserted).
VonNeumannReport von_neumann_check(std::span<const Eigen::ArrayXcd> fs,
                                   const GowersBudget& budget = {});

}  // namespace apdec
