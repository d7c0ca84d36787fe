#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "apdec/gowers.hpp"
#include "apdec/rational.hpp"
#include "apdec/rng.hpp"

namespace apdec {

// Finite partition of [N] with part lookup. Parts are nonempty, disjoint,
// cover [N], and are kept in a deterministic order.
struct Factor {
  i64 ambient = 0;
  std::vector<i64> part_id;             // index x-1 -> part index
  std::vector<std::vector<i64>> parts;  // sorted 1-based elements

  struct Provenance {
    std::string generator;
    i64 resolution = 0;
    double shift = 0.0;
  };
  std::vector<Provenance> provenance;

  static Factor trivial(i64 n);
  static Factor singletons(i64 n);
  bool consistent() const;  // part_id and parts agree, cover exactly [N]
};

// Parts are the preimages of [j/K, (j+1)/K) under g; empty parts discarded.
// Bucket convention: floor(K * g(x)), boundary values go up.
Factor induced_factor(const Eigen::ArrayXd& g, i64 k_resolution);

// Coarsest common refinement, empty intersections discarded.
Factor join(std::span<const Factor> factors);
Factor join(const Factor& a, const Factor& b);

// Conditional expectation: constant on parts, equal to the part average.
Eigen::ArrayXcd project(const Factor& b, const Eigen::ArrayXcd& f);
Eigen::ArrayXd project(const Factor& b, const Eigen::ArrayXd& f);
std::vector<Rat> project(const Factor& b, const std::vector<Rat>& f);

// ||Pi_B f||^2_{L^2[N]} with E-normalization.
double energy(const Factor& b, const Eigen::ArrayXcd& f);
double energy(const Factor& b, const Eigen::ArrayXd& f);
Rat energy_exact(const Factor& b, const std::vector<Rat>& f);

struct RegularityReport {
  double constant = 0.0;  // max over the realized radius grid
  double r_floor = 0.0;   // 1/(4NK); radii are clamped below at this floor
  bool floor_bound = false;  // the max was attained at a clamped radius
  size_t grid_size = 0;
};

// M_{g,K}(t) evaluated over the data-determined radius grid: the sup of the
// step ratio is attained at realized distances (or at the floor, flagged).
RegularityReport regularity(const Eigen::ArrayXd& g, i64 k_resolution,
                            double t);

struct ShiftConfig {
  double c = 4.0;   // regularity constant to beat
  int budget = 64;  // sampled shifts before giving up
  u64 seed = 1;
};

// A shift t in [0, 1/K) making the factor induced by g + t C-regular, found
// by seeded sampling; throws ShiftNotFound after the budget.
double select_shift(const Eigen::ArrayXd& g, i64 k_resolution,
                    const ShiftConfig& cfg = {});

}  // namespace apdec
