#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "apdec/factor.hpp"
#include "apdec/gowers.hpp"
#include "apdec/nilmanifold.hpp"

namespace apdec {

// All constants the source bounds leave implicit or existential live here.
struct IncrementConfig {
  i64 resolution_k = 64;        // discretization resolution K
  double regularity_c = 4.0;    // C for the shift selection
  int factor_iteration_cap = 24;
  double correlation_floor_scale = 0.5;  // oracle floor = scale * delta^2
  i64 small_n_cutoff = 32;
  i64 min_progression_length = 4;  // floor on the long-contained threshold
  double cstar_scale = 0.0;        // eta = cstar * delta^k; 0 -> c/(8k 2^k)
  int driver_iteration_cap = 64;
  u64 seed = 2024;
  GowersBudget gowers;
  NilDecomposeConfig nil;
};

// Result of one inverse-oracle call: a Torus(1) nilsequence handle
// F(g(n)) = cos(2pi(theta n + phase)) together with its revalidated
// correlation, or found = false (no correlation above the floor).
struct InverseOracleResult {
  bool found = false;
  Rat theta;
  double phase = 0.0;
  double correlation = 0.0;
  NilPolySeq g;
  std::string descriptor;
};

using InverseOracle = std::function<InverseOracleResult(
    const Eigen::ArrayXd& f, double delta, const IncrementConfig& cfg)>;

// U^2 instance: peak Fourier coefficient over Z/NtildeZ (Ntilde the power of
// two >= 4N used by the interval norm), real part taken via a phase.
InverseOracleResult fourier_inverse_oracle(const Eigen::ArrayXd& f,
                                           double delta,
                                           const IncrementConfig& cfg = {});

struct FactorBuildStep {
  int iteration = 0;
  double u_norm_before = 0.0;  // ||f - Pi_B f||_{U^{k-1}[N]}
  double correlation = 0.0;
  double theta = 0.0;
  double shift = 0.0;
  double energy_after = 0.0;
  double energy_gain = 0.0;       // energy difference across the join
  double projection_gap = 0.0;    // ||Pi_{B'} f - Pi_B f||^2_{L^2}
};

enum class FactorBuildStatus { stopped, oracle_exhausted, budget_exceeded };

struct FactorBuildResult {
  Factor factor;
  FactorBuildStatus status = FactorBuildStatus::stopped;
  std::vector<FactorBuildStep> steps;
  std::vector<double> energies;  // energy(B_i, f), starting at the trivial factor
  std::vector<NilPolySeq> generators;
  std::vector<Eigen::ArrayXd> generator_values;  // h_i = F_i(g_i(n)) + t_i
  double final_u_norm = 0.0;
};

// Iterate: stop once ||f - Pi_B f||_{U^{k-1}[N]} <= eta, otherwise obtain a
// correlating nilsequence from the oracle, shift it regular, join its induced
// factor, and log the energy increment.
FactorBuildResult build_factor(const Eigen::ArrayXd& f, double eta,
                               const InverseOracle& oracle, int k,
                               const IncrementConfig& cfg = {});

enum class OutcomeKind { small_n, count_stable, density_increment, chain_broken };

const char* outcome_name(OutcomeKind k);

struct ChainCheck {
  std::string step;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

struct IncrementOutcome {
  OutcomeKind kind = OutcomeKind::small_n;
  i64 n = 0;
  double delta = 0.0;
  // count_stable
  double lambda_diff = 0.0;
  double lambda_threshold = 0.0;
  // density_increment (progression directly revalidated)
  Progression progression;
  double delta_new = 0.0;
  double c_prime_effective = 0.0;  // increment constant (half the proof's c')
  // diagnostics
  std::vector<ChainCheck> chain;
  std::string broken_at;  // first failed chain step when kind == chain_broken
  FactorBuildStatus factor_status = FactorBuildStatus::stopped;
  i64 factor_parts = 0;
  double factor_energy = 0.0;
  i64 decomposition_parts = 0;
  int subdivision_rounds = 0;  // refinement rounds before contained parts appeared
  std::vector<FactorBuildStep> factor_steps;
};

// The trichotomy: small N, stable count, or a verified density increment on a
// progression. Every chain inequality is evaluated and logged; an increment
// is returned only when the direct density recheck passes, and a failed chain
// yields the diagnostic chain_broken outcome (never a silent wrong answer).
IncrementOutcome trichotomy_step(const Eigen::ArrayXd& f, double c,
                                 const InverseOracle& oracle, int k,
                                 const IncrementConfig& cfg = {});

struct TraceIteration {
  int index = 0;
  i64 n = 0;
  i64 set_size = 0;
  double delta = 0.0;
  std::string delta_exact;
  OutcomeKind outcome = OutcomeKind::small_n;
  Progression progression;
  double delta_new = 0.0;
  i64 factor_parts = 0;
  double factor_energy = 0.0;
  std::vector<ChainCheck> chain;
  std::vector<FactorBuildStep> factor_steps;
};

struct RunTrace {
  std::vector<TraceIteration> iterations;
  OutcomeKind final_outcome = OutcomeKind::small_n;
  i64 final_n = 0;
  double final_delta = 0.0;
  double c_prime_effective = 0.0;
  bool consistent = true;  // increments strict, rechecked by direct averaging
};

// Outer driver: iterate the trichotomy, rescaling A to each returned
// progression, until small N / stable counts / a broken chain stops the run.
RunTrace density_increment_driver(const std::vector<i64>& set, i64 n, int k,
                                  double c, const InverseOracle& oracle,
                                  const IncrementConfig& cfg = {});

}  // namespace apdec
