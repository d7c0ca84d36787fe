#pragma once

#include <span>
#include <vector>

#include "apdec/binomial_poly.hpp"
#include "apdec/progression.hpp"

namespace apdec {

enum class SchmidtMethod { brute, lattice };

struct SchmidtWitness {
  i64 n = 1;
  double achieved = 0.0;       // max_i ||alpha_i n^k||_{R/Z}
  std::string achieved_exact;  // same value as an exact fraction, when available
  SchmidtMethod method = SchmidtMethod::brute;
};

// Exact brute-force minimizer of max_i ||alpha_i n^k|| over n in [1, N].
// Smallest minimizer wins ties. This is the oracle the accelerated search is
// validated against.
SchmidtWitness min_frac_power(std::span<const Rat> alphas, int k, i64 n);

struct LatticeConfig {
  i64 window = 1 << 14;  // brute-force window always included in the search
  double slack = 1.0;    // declared: achieved <= slack * (windowed brute value)
};

// Accelerated search for large N: brute window, multiplicative two-level
// refinement, and (for k = 1) LLL / continued-fraction candidates. Returns a
// valid witness, not necessarily the global minimizer. Throws SearchFailed
// when nothing beats the trivial 1/2.
SchmidtWitness min_frac_lattice(std::span<const Rat> alphas, int k, i64 n,
                                const LatticeConfig& cfg = {});

struct DecomposeConfig {
  i64 small_n_cutoff = 16;   // below this, fall back to singletons
  i64 schmidt_window = 1 << 14;
};

// Recursive decomposition of [N] into progressions on which every input
// polynomial is nearly constant mod 1. Certificates are accumulated exactly
// along the recursion; measured diameters are exhaustive.
Decomposition decompose_interval(std::span<const BinomialPoly> polys, i64 n,
                                 int depth_budget = 16,
                                 const DecomposeConfig& cfg = {});

struct ScalingReport {
  int k = 0;
  int d = 0;
  std::vector<i64> n_grid;
  int trials = 0;
  std::vector<std::vector<double>> values;  // [trial][grid index]
  std::vector<double> geo_mean;             // per grid point
  double fitted_slope = 0.0;                // log-log least squares
  bool monotone_ok = true;                  // non-increasing in N per trial
};

ScalingReport scaling_experiment(int k, int d, std::span<const i64> n_grid,
                                 int trials, u64 seed);

}  // namespace apdec
