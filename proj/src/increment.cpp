#include "apdec/increment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace apdec {

namespace {

// cos(2pi(theta*n + phase)) with the fractional part of theta*n computed
// exactly; keeps the nilsequence values stable for large n.
double cos_phase(const Rat& theta, double phase, i64 n) {
  double fr = (theta * Rat(n)).frac().to_double();
  return std::cos(2.0 * std::numbers::pi * (fr + phase));
}

Eigen::ArrayXcd to_complex(const Eigen::ArrayXd& f) {
  Eigen::ArrayXcd out(f.size());
  for (i64 i = 0; i < f.size(); ++i) out[i] = cd(f[i], 0.0);
  return out;
}

bool is_indicator(const Eigen::ArrayXd& f) {
  for (i64 i = 0; i < f.size(); ++i)
    if (f[i] != 0.0 && f[i] != 1.0) return false;
  return true;
}

}  // namespace

const char* outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::small_n: return "small_n";
    case OutcomeKind::count_stable: return "count_stable";
    case OutcomeKind::density_increment: return "density_increment";
    case OutcomeKind::chain_broken: return "chain_broken";
  }
  return "unknown";
}

InverseOracleResult fourier_inverse_oracle(const Eigen::ArrayXd& f,
                                           double delta,
                                           const IncrementConfig& cfg) {
  const i64 n = f.size();
  if (n < 1) throw ConfigInvalid("fourier_inverse_oracle: empty function");
  const i64 ntilde = next_pow2(4 * n);

  Eigen::ArrayXcd ext = Eigen::ArrayXcd::Zero(ntilde);
  for (i64 x = 1; x <= n; ++x) ext[x % ntilde] = cd(f[x - 1], 0.0);
  Eigen::ArrayXcd hat = dft(ext, -1) / double(ntilde);

  i64 best_xi = 0;
  double best_mag = -1.0;
  for (i64 xi = 0; xi < ntilde; ++xi) {
    double m = std::abs(hat[xi]);
    if (m > best_mag) {
      best_mag = m;
      best_xi = xi;
    }
  }

  InverseOracleResult res;
  res.theta = Rat(best_xi) / Rat(ntilde);
  // z = E_{n in [N]} f(n) e(theta n); the real nilsequence F = cos(2pi(x+phase))
  // attains correlation |z| at phase = -arg(z)/2pi.
  cd z(0.0, 0.0);
  for (i64 x = 1; x <= n; ++x) {
    double fr = (res.theta * Rat(x)).frac().to_double();
    double ang = 2.0 * std::numbers::pi * fr;
    z += f[x - 1] * cd(std::cos(ang), std::sin(ang));
  }
  z /= double(n);
  res.phase = -std::arg(z) / (2.0 * std::numbers::pi);

  // Revalidate by direct summation against the actual descriptor.
  double corr = 0.0;
  for (i64 x = 1; x <= n; ++x)
    corr += f[x - 1] * cos_phase(res.theta, res.phase, x);
  corr /= double(n);
  res.correlation = corr;

  double floor = cfg.correlation_floor_scale * delta * delta;
  res.found = std::fabs(corr) >= floor;
  res.g = make_seq(NilCatalogEntry::torus(1),
                   {BinomialPoly({Rat(0), res.theta})});
  res.descriptor = "cos(2pi(" + res.theta.to_string() + " n + phase)), phase=" +
                   std::to_string(res.phase);
  return res;
}

FactorBuildResult build_factor(const Eigen::ArrayXd& f, double eta,
                               const InverseOracle& oracle, int k,
                               const IncrementConfig& cfg) {
  if (k < 3) throw ConfigInvalid("build_factor: k >= 3");
  const i64 n = f.size();
  FactorBuildResult out;
  out.factor = Factor::trivial(n);
  out.energies.push_back(energy(out.factor, to_complex(f)));

  for (int iter = 0; iter < cfg.factor_iteration_cap; ++iter) {
    Eigen::ArrayXd residual = f - project(out.factor, f);
    double u = gowers_norm_interval(to_complex(residual), k - 1, 0, cfg.gowers);
    out.final_u_norm = u;
    if (u <= eta) {
      out.status = FactorBuildStatus::stopped;
      return out;
    }
    // The measured norm is the tightest valid lower bound to hand the oracle.
    InverseOracleResult got = oracle(residual, std::max(u, eta), cfg);
    if (!got.found) {
      out.status = FactorBuildStatus::oracle_exhausted;
      return out;
    }
    Eigen::ArrayXd h(n);
    for (i64 x = 1; x <= n; ++x)
      h[x - 1] = cos_phase(got.theta, got.phase, x);
    ShiftConfig sc;
    sc.c = cfg.regularity_c;
    sc.seed = cfg.seed ^ (0x5851f42d4c957f2dULL * u64(iter + 1));
    double t = select_shift(h, cfg.resolution_k, sc);
    Eigen::ArrayXd h_shifted = h + t;

    Factor joined = join(out.factor, induced_factor(h_shifted, cfg.resolution_k));
    double e_old = out.energies.back();
    double e_new = energy(joined, to_complex(f));
    Eigen::ArrayXd gap = project(joined, f) - project(out.factor, f);
    FactorBuildStep step;
    step.iteration = iter;
    step.u_norm_before = u;
    step.correlation = got.correlation;
    step.theta = got.theta.to_double();
    step.shift = t;
    step.energy_after = e_new;
    step.energy_gain = e_new - e_old;
    step.projection_gap = gap.square().mean();
    out.steps.push_back(step);
    out.energies.push_back(e_new);
    out.generators.push_back(got.g);
    out.generator_values.push_back(h_shifted);
    out.factor = std::move(joined);
  }
  Eigen::ArrayXd residual = f - project(out.factor, f);
  out.final_u_norm =
      gowers_norm_interval(to_complex(residual), k - 1, 0, cfg.gowers);
  out.status = out.final_u_norm <= eta ? FactorBuildStatus::stopped
                                       : FactorBuildStatus::budget_exceeded;
  return out;
}

namespace {

struct LambdaPair {
  double lambda_f = 0.0;
  double lambda_uniform = 0.0;  // Lambda_k(delta * 1_[N])
};

LambdaPair lambda_values(const Eigen::ArrayXd& f, int k, double delta) {
  const i64 n = f.size();
  LambdaPair out;
  std::vector<char> full(static_cast<size_t>(n), 1);
  double full_count = double(ap_count_indicator(full, k));
  double denom = double(n + 1) * double(n + 1);
  out.lambda_uniform = std::pow(delta, double(k)) * full_count / denom;
  if (is_indicator(f)) {
    std::vector<char> mem(static_cast<size_t>(n));
    for (i64 i = 0; i < n; ++i) mem[size_t(i)] = f[i] == 1.0;
    out.lambda_f = double(ap_count_indicator(mem, k)) / denom;
    return out;
  }
  std::vector<Eigen::ArrayXcd> fs(size_t(k), to_complex(f));
  out.lambda_f = ap_operator_real(fs);
  return out;
}

void add_check(std::vector<ChainCheck>& chain, std::string step, double lhs,
               double rhs) {
  chain.push_back(ChainCheck{std::move(step), lhs, rhs, lhs <= rhs});
}

}  // namespace

IncrementOutcome trichotomy_step(const Eigen::ArrayXd& f, double c,
                                 const InverseOracle& oracle, int k,
                                 const IncrementConfig& cfg) {
  if (k < 3) throw ConfigInvalid("trichotomy_step: k >= 3");
  const i64 n = f.size();
  for (i64 i = 0; i < n; ++i)
    if (f[i] < -1e-12 || f[i] > 1.0 + 1e-12)
      throw ConfigInvalid("trichotomy_step: f must map into [0,1]");

  IncrementOutcome out;
  out.n = n;
  out.delta = f.mean();
  const double delta = out.delta;

  if (n <= cfg.small_n_cutoff) {
    out.kind = OutcomeKind::small_n;
    return out;
  }

  LambdaPair lp = lambda_values(f, k, delta);
  out.lambda_diff = std::fabs(lp.lambda_f - lp.lambda_uniform);
  out.lambda_threshold = c * std::pow(delta, double(k));
  if (out.lambda_diff <= out.lambda_threshold) {
    out.kind = OutcomeKind::count_stable;
    return out;
  }

  // Step 1: increment on a factor.
  const double c_prime = std::min(c, 1.0) / std::pow(10.0 * k, 5.0);
  out.c_prime_effective = c_prime / 2.0;
  const double cstar =
      cfg.cstar_scale > 0 ? cfg.cstar_scale
                          : c / (8.0 * double(k) * std::ldexp(1.0, k));
  const double eta = cstar * std::pow(delta, double(k));

  FactorBuildResult fb = build_factor(f, eta, oracle, k, cfg);
  out.factor_status = fb.status;
  out.factor_parts = i64(fb.factor.parts.size());
  out.factor_energy = fb.energies.back();
  out.factor_steps = fb.steps;

  Eigen::ArrayXd pf = project(fb.factor, f);
  add_check(out.chain, "factor_u_norm: ||f - Pi_B f||_{U^{k-1}} <= eta",
            fb.final_u_norm, eta);

  // Telescoped count comparison (monitored, not asserted).
  {
    std::vector<Eigen::ArrayXcd> fs(size_t(k), to_complex(pf));
    double lambda_pf = ap_operator_real(fs);
    add_check(out.chain, "telescope: |Lambda(f) - Lambda(Pi_B f)| <= c delta^k / 2",
              std::fabs(lp.lambda_f - lambda_pf),
              c * std::pow(delta, double(k)) / 2.0);
  }

  std::vector<char> omega(static_cast<size_t>(n), 0);
  i64 omega_count = 0;
  const double cut = (1.0 + c_prime) * delta;
  for (i64 i = 0; i < n; ++i) {
    if (pf[i] > cut) {
      omega[size_t(i)] = 1;
      ++omega_count;
    }
  }
  double omega_measure = double(omega_count) / double(n);
  double omega_lower = c * std::pow(delta, double(k)) / (20.0 * double(k));
  // The measure bound is the proof's conclusion; record it with sides swapped
  // (have >= want), encoded as want <= have.
  add_check(out.chain, "omega_measure: P[Omega'] >= c delta^k / (20k)",
            omega_lower, omega_measure);

  if (omega_count == 0) {
    out.kind = OutcomeKind::chain_broken;
    out.broken_at = "omega_measure";
    return out;
  }

  // Step 2: increment on a progression.
  if (fb.generators.empty()) {
    out.kind = OutcomeKind::chain_broken;
    out.broken_at = "no_generators";
    return out;
  }
  NilDecomposeResult nil = decompose_nil(fb.generators, n, cfg.nil);
  out.decomposition_parts = i64(nil.dec.parts.size());

  // At desk scale the decomposition's constancy scale can sit above the
  // factor's bucket width 1/K, making every part crossing. Subdividing a
  // progression yields progressions, so refine the family until contained
  // parts appear (bounded rounds, recorded in the outcome).
  std::vector<Progression> family = nil.dec.parts;
  double omega_star_measure = 0.0;
  double omega_star_mass = 0.0;  // sum of f over Omega*
  Progression best_prog;
  double best_avg = -1.0;
  i64 len_threshold = cfg.min_progression_length;

  for (int round = 0; round <= 6; ++round) {
    out.subdivision_rounds = round;
    const double len_threshold_paper = c * c_prime *
                                       std::pow(delta, double(k + 1)) /
                                       (400.0 * double(k)) * double(n) /
                                       double(family.size());
    len_threshold = std::max<i64>(cfg.min_progression_length,
                                  i64(std::ceil(len_threshold_paper)));
    omega_star_measure = 0.0;
    omega_star_mass = 0.0;
    best_avg = -1.0;
    bool any_contained = false;
    for (const auto& part : family) {
      bool any_in = false, any_out = false;
      double mass = 0.0;
      for (i64 i = 1; i <= part.length; ++i) {
        i64 x = part.element(i);
        (omega[size_t(x - 1)] ? any_in : any_out) = true;
        mass += f[x - 1];
      }
      bool contained = any_in && !any_out;
      if (!contained || part.length < len_threshold) continue;
      any_contained = true;
      omega_star_measure += double(part.length) / double(n);
      omega_star_mass += mass;
      double avg = mass / double(part.length);
      if (avg > best_avg) {
        best_avg = avg;
        best_prog = part;
      }
    }
    if (any_contained) break;
    // Halve every part still long enough to split.
    std::vector<Progression> next;
    bool shrunk = false;
    for (const auto& part : family) {
      if (part.length >= 2 * len_threshold) {
        i64 half = part.length / 2;
        next.push_back(Progression{part.start, part.step, half, part.ambient_n});
        next.push_back(Progression{part.start + part.step * half, part.step,
                                   part.length - half, part.ambient_n});
        shrunk = true;
      } else {
        next.push_back(part);
      }
    }
    if (!shrunk) break;
    family = std::move(next);
  }
  const Progression* best = best_avg >= 0 ? &best_prog : nullptr;
  add_check(out.chain,
            "discard_budget: P[Omega'] - P[Omega*] <= c c' delta^(k+1)/(200k)",
            omega_measure - omega_star_measure,
            c * c_prime * std::pow(delta, double(k + 1)) / (200.0 * double(k)));
  const double target = (1.0 + c_prime / 2.0) * delta;
  if (omega_star_measure > 0) {
    add_check(out.chain, "omega_star_density: E_{Omega*} f >= (1+c'/2) delta",
              target, omega_star_mass / (omega_star_measure * double(n)));
  } else {
    add_check(out.chain, "omega_star_density: E_{Omega*} f >= (1+c'/2) delta",
              target, -1.0);
  }
  add_check(out.chain, "pigeonhole: max contained-part density >= (1+c'/2) delta",
            target, best_avg);

  if (best != nullptr && best_avg >= target - 1e-15) {
    out.kind = OutcomeKind::density_increment;
    out.progression = *best;
    out.delta_new = best_avg;
    return out;
  }
  out.kind = OutcomeKind::chain_broken;
  for (const auto& chk : out.chain) {
    if (!chk.pass) {
      out.broken_at = chk.step.substr(0, chk.step.find(':'));
      break;
    }
  }
  if (out.broken_at.empty()) out.broken_at = "pigeonhole";
  return out;
}

RunTrace density_increment_driver(const std::vector<i64>& set, i64 n, int k,
                                  double c, const InverseOracle& oracle,
                                  const IncrementConfig& cfg) {
  if (set.empty()) throw ConfigInvalid("density_increment_driver: empty set");
  for (i64 x : set)
    if (x < 1 || x > n)
      throw ConfigInvalid("density_increment_driver: set element outside [N]");

  RunTrace trace;
  std::vector<i64> cur = set;
  std::sort(cur.begin(), cur.end());
  i64 cur_n = n;

  for (int iter = 0; iter < cfg.driver_iteration_cap; ++iter) {
    Eigen::ArrayXd f = Eigen::ArrayXd::Zero(cur_n);
    for (i64 x : cur) f[x - 1] = 1.0;

    IncrementOutcome out = trichotomy_step(f, c, oracle, k, cfg);
    trace.c_prime_effective = out.c_prime_effective;

    TraceIteration ti;
    ti.index = iter;
    ti.n = cur_n;
    ti.set_size = i64(cur.size());
    ti.delta = out.delta;
    ti.delta_exact = Rat(i64(cur.size())).to_string() + "/" +
                     std::to_string(cur_n);
    ti.outcome = out.kind;
    ti.chain = out.chain;
    ti.factor_parts = out.factor_parts;
    ti.factor_energy = out.factor_energy;
    ti.factor_steps = out.factor_steps;

    if (out.kind == OutcomeKind::density_increment) {
      ti.progression = out.progression;
      ti.delta_new = out.delta_new;
      // Direct recheck: count the rescaled set exactly.
      std::vector<i64> next;
      for (i64 i = 1; i <= out.progression.length; ++i) {
        i64 x = out.progression.element(i);
        if (std::binary_search(cur.begin(), cur.end(), x)) next.push_back(i);
      }
      double direct =
          double(next.size()) / double(out.progression.length);
      if (std::fabs(direct - out.delta_new) > 1e-12 ||
          direct < (1.0 + out.c_prime_effective) * out.delta - 1e-12)
        trace.consistent = false;
      trace.iterations.push_back(std::move(ti));
      cur = std::move(next);
      cur_n = out.progression.length;
      if (cur.empty()) break;  // cannot happen after a verified increment
      continue;
    }
    trace.iterations.push_back(std::move(ti));
    break;
  }
  const TraceIteration& last = trace.iterations.back();
  trace.final_outcome = last.outcome;
  trace.final_n = cur_n;
  trace.final_delta = double(cur.size()) / double(cur_n);
  // Monotone densities, strict at increment steps.
  for (size_t i = 0; i + 1 < trace.iterations.size(); ++i) {
    if (trace.iterations[i + 1].delta <
        trace.iterations[i].delta *
                (1.0 + trace.c_prime_effective) -
            1e-12)
      trace.consistent = false;
  }
  return trace;
}

}  // namespace apdec
