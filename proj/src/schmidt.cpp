#include "apdec/schmidt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "apdec/fracdiam.hpp"
#include "apdec/rng.hpp"

namespace apdec {

namespace {

using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 q) { return u64(u128(a) * b % q); }

u64 powmod(u64 base, int e, u64 q) {
  u64 r = 1 % q;
  base %= q;
  for (int i = 0; i < e; ++i) r = mulmod(r, base, q);
  return r;
}

// alpha reduced mod 1 as p/q with 0 <= p < q < 2^62.
struct ModAlpha {
  u64 p = 0, q = 1;
};

// ||x|| as an exact fraction num/den, num <= den/2.
struct ExactDist {
  u64 num = 0, den = 1;
  double val() const { return double(num) / double(den); }
};

bool dist_less(const ExactDist& a, const ExactDist& b) {
  return u128(a.num) * b.den < u128(b.num) * a.den;
}

bool reduce_alphas(std::span<const Rat> alphas, std::vector<ModAlpha>& out) {
  out.clear();
  for (const auto& a : alphas) {
    if (a.den().bit_length() > 62) return false;
    Rat f = a.frac();
    ModAlpha m;
    m.q = f.den().abs_u64();
    m.p = f.num().abs_u64();  // frac() is in [0,1): num >= 0
    out.push_back(m);
  }
  return true;
}

ExactDist eval_exact(const std::vector<ModAlpha>& alphas, int k, i64 n) {
  ExactDist best{0, 1};
  for (const auto& a : alphas) {
    u64 t = powmod(u64(n % i64(a.q)), k, a.q);
    u64 r = mulmod(a.p, t, a.q);
    ExactDist d{std::min(r, a.q - r), a.q};
    if (dist_less(best, d)) best = d;
  }
  return best;
}

Rat eval_rat(std::span<const Rat> alphas, int k, i64 n) {
  Rat best;
  Rat npow(BigInt::pow(BigInt(n), unsigned(k)), BigInt(1));
  for (const auto& a : alphas) {
    Rat d = (a * npow).dist_to_int();
    if (d > best) best = d;
  }
  return best;
}

SchmidtWitness brute_scan(std::span<const Rat> alphas, int k, i64 n,
                          SchmidtMethod tag) {
  SchmidtWitness w;
  w.method = tag;
  std::vector<ModAlpha> mod;
  if (reduce_alphas(alphas, mod)) {
    ExactDist best{1, 1};  // sentinel: 1 > any distance
    i64 best_n = 1;
    for (i64 x = 1; x <= n; ++x) {
      ExactDist d = eval_exact(mod, k, x);
      if (dist_less(d, best)) {
        best = d;
        best_n = x;
        if (best.num == 0) break;  // cannot improve on an exact hit
      }
    }
    w.n = best_n;
    w.achieved = best.val();
    w.achieved_exact =
        std::to_string(best.num) + "/" + std::to_string(best.den);
    return w;
  }
  // Oversized denominators: exact rational fallback.
  Rat best = eval_rat(alphas, k, 1);
  i64 best_n = 1;
  for (i64 x = 2; x <= n; ++x) {
    Rat d = eval_rat(alphas, k, x);
    if (d < best) {
      best = d;
      best_n = x;
      if (best.is_zero()) break;
    }
  }
  w.n = best_n;
  w.achieved = best.to_double();
  w.achieved_exact = best.to_string();
  return w;
}

i64 isqrt_i64(i64 n) {
  if (n < 0) return 0;
  i64 r = i64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// ---- LLL (double precision) ------------------------------------------------

void lll_reduce(Eigen::MatrixXd& b, double delta = 0.75) {
  const int n = int(b.rows());
  Eigen::MatrixXd bstar = b;
  Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, n);
  auto gram_schmidt = [&]() {
    bstar = b;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        double denom = bstar.row(j).squaredNorm();
        mu(i, j) = denom > 0 ? b.row(i).dot(bstar.row(j)) / denom : 0.0;
        bstar.row(i) -= mu(i, j) * bstar.row(j);
      }
    }
  };
  gram_schmidt();
  int k = 1, guard = 0;
  while (k < n && ++guard < 10000) {
    for (int j = k - 1; j >= 0; --j) {
      if (std::fabs(mu(k, j)) > 0.5) {
        b.row(k) -= std::round(mu(k, j)) * b.row(j);
        gram_schmidt();
      }
    }
    double lhs = bstar.row(k).squaredNorm();
    double rhs = (delta - mu(k, k - 1) * mu(k, k - 1)) *
                 bstar.row(k - 1).squaredNorm();
    if (lhs >= rhs) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      gram_schmidt();
      k = std::max(1, k - 1);
    }
  }
}

void lll_candidates(std::span<const Rat> alphas, i64 n,
                    std::vector<i64>& cand) {
  const int d = int(alphas.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d + 1, d + 1);
  b(0, 0) = 1.0 / double(n);
  for (int i = 0; i < d; ++i) b(0, i + 1) = alphas[size_t(i)].frac().to_double();
  for (int i = 1; i <= d; ++i) b(i, i) = 1.0;
  lll_reduce(b);
  for (int i = 0; i <= d; ++i) {
    i64 m = i64(std::llround(b(i, 0) * double(n)));
    if (m < 0) m = -m;
    if (m >= 1 && m <= n) cand.push_back(m);
  }
}

// Continued-fraction convergent denominators of p/q, capped by n.
void cf_candidates(const Rat& alpha, i64 n, std::vector<i64>& cand) {
  BigInt p = alpha.frac().num(), q = alpha.frac().den();
  BigInt h0(0), h1(1);  // denominators of successive convergents
  while (!p.is_zero()) {
    BigInt a, r;
    BigInt::divmod_floor(q, p, a, r);
    BigInt h2 = a * h1 + h0;
    if (h2 > BigInt(n)) break;
    if (h2 >= BigInt(1)) cand.push_back(h2.to_i64());
    h0 = h1;
    h1 = h2;
    q = p;
    p = r;
  }
}

struct SearchState {
  std::vector<ModAlpha> mod;
  bool fast = false;
  std::span<const Rat> alphas;
  int k = 1;
};

ExactDist eval_any(const SearchState& st, i64 x, Rat* exact_out) {
  if (st.fast) {
    if (exact_out) *exact_out = Rat();
    return eval_exact(st.mod, st.k, x);
  }
  Rat v = eval_rat(st.alphas, st.k, x);
  if (exact_out) *exact_out = v;
  // Projected to a double-graded fraction for comparisons; exact enough for
  // the candidate ranking in the slow path.
  ExactDist d;
  d.den = u64(1) << 62;
  d.num = u64(std::min(0.5, v.to_double()) * double(d.den));
  return d;
}

}  // namespace

SchmidtWitness min_frac_power(std::span<const Rat> alphas, int k, i64 n) {
  if (n < 1 || k < 1 || alphas.empty())
    throw ConfigInvalid("min_frac_power: need n >= 1, k >= 1, d >= 1");
  return brute_scan(alphas, k, n, SchmidtMethod::brute);
}

SchmidtWitness min_frac_lattice(std::span<const Rat> alphas, int k, i64 n,
                                const LatticeConfig& cfg) {
  if (n < 1 || k < 1 || alphas.empty())
    throw ConfigInvalid("min_frac_lattice: need n >= 1, k >= 1, d >= 1");

  std::vector<i64> cand;
  i64 window = std::min(n, cfg.window);

  // Brute window.
  SchmidtWitness base = brute_scan(alphas, k, window, SchmidtMethod::lattice);
  cand.push_back(base.n);

  if (n > window) {
    // Multiplicative refinement: good n0 on a square-root scale, then solve
    // the transformed problem alpha * n0^k on the quotient range.
    try {
      i64 root = std::max<i64>(2, isqrt_i64(n));
      SchmidtWitness w0 =
          root <= window ? brute_scan(alphas, k, root, SchmidtMethod::lattice)
                         : min_frac_lattice(alphas, k, root, cfg);
      if (w0.n > 1) {
        std::vector<Rat> shifted;
        Rat npow(BigInt::pow(BigInt(w0.n), unsigned(k)), BigInt(1));
        for (const auto& a : alphas) shifted.push_back((a * npow).frac());
        i64 rest = n / w0.n;
        if (rest > 1) {
          SchmidtWitness w1 =
              rest <= window
                  ? brute_scan(shifted, k, rest, SchmidtMethod::lattice)
                  : min_frac_lattice(shifted, k, rest, cfg);
          cand.push_back(w0.n * w1.n);
        }
        cand.push_back(w0.n);
      }
    } catch (const SearchFailed&) {
      // sub-search found nothing useful; the brute window still stands
    }
    if (k == 1) {
      lll_candidates(alphas, n, cand);
      if (alphas.size() == 1) cf_candidates(alphas[0], n, cand);
    }
  }

  SearchState st;
  st.alphas = alphas;
  st.k = k;
  st.fast = reduce_alphas(alphas, st.mod);

  ExactDist best{1, 1};
  Rat best_rat;
  i64 best_n = 0;
  for (i64 x : cand) {
    if (x < 1 || x > n) continue;
    Rat r;
    ExactDist d = eval_any(st, x, &r);
    if (best_n == 0 || dist_less(d, best) ||
        (!dist_less(best, d) && x < best_n)) {
      best = d;
      best_rat = r;
      best_n = x;
    }
  }

  SchmidtWitness w;
  w.method = SchmidtMethod::lattice;
  w.n = best_n;
  w.achieved = st.fast ? best.val() : best_rat.to_double();
  w.achieved_exact = st.fast ? std::to_string(best.num) + "/" +
                                   std::to_string(best.den)
                             : best_rat.to_string();
  if (w.achieved >= 0.5)
    throw SearchFailed("min_frac_lattice: no candidate beats 1/2");
  return w;
}

namespace {

struct RecResult {
  std::vector<Progression> parts;  // local coordinates over [1, n]
  std::vector<Rat> cert;           // per input polynomial
};

Progression whole_interval(i64 n) { return Progression{0, 1, n, n}; }

RecResult decompose_rec(const std::vector<BinomialPoly>& polys, i64 n,
                        int depth, int depth_budget,
                        const DecomposeConfig& cfg) {
  if (depth > depth_budget)
    throw BudgetExhausted("decompose_interval: depth budget exceeded");
  const size_t d = polys.size();
  RecResult res;
  res.cert.assign(d, Rat(0));
  if (n <= 0) return res;

  int k = 0;
  for (const auto& p : polys) k = std::max(k, p.effective_degree());

  if (k == 0) {  // constants are exactly constant mod 1
    res.parts.push_back(whole_interval(n));
    return res;
  }
  if (n < cfg.small_n_cutoff) {
    for (i64 x = 1; x <= n; ++x)
      res.parts.push_back(Progression{x - 1, 1, 1, n});
    return res;
  }

  // Schmidt search over common differences D <= sqrt(N), applied to the
  // monomial leading coefficients of the degree-k polynomials.
  std::vector<Rat> lambdas(d);
  for (size_t j = 0; j < d; ++j) {
    if (polys[j].effective_degree() == k)
      lambdas[j] = polys[j].leading_monomial_coeff();
  }
  i64 dmax = std::max<i64>(1, isqrt_i64(n));
  SchmidtWitness wit =
      dmax <= cfg.schmidt_window
          ? min_frac_power(lambdas, k, dmax)
          : min_frac_lattice(lambdas, k, dmax, LatticeConfig{cfg.schmidt_window, 1.0});
  const i64 D = wit.n;

  // Realized tau governs the chunk length.
  Rat dpow(BigInt::pow(BigInt(D), unsigned(k)), BigInt(1));
  Rat tau;
  for (size_t j = 0; j < d; ++j) {
    Rat t = (lambdas[j] * dpow).dist_to_int();
    if (t > tau) tau = t;
  }
  i64 target = n;  // tau == 0: whole residue classes need no chopping
  if (!tau.is_zero()) {
    double t = std::pow(tau.to_double(), -1.0 / double(2 * k));
    target = std::max<i64>(1, std::min<double>(double(n), std::floor(t)));
  }

  for (i64 s = 1; s <= D; ++s) {
    i64 class_len = (n - s) / D + 1;  // elements s, s+D, ...
    i64 nchunks = (class_len + target - 1) / target;
    i64 pos = 0;  // local index within the residue class, 0-based
    for (i64 c = 0; c < nchunks; ++c) {
      i64 len = class_len / nchunks + (c < class_len % nchunks ? 1 : 0);
      i64 b = s - D + pos * D;  // chunk = {b + D*t : t = 1..len}
      pos += len;
      std::vector<BinomialPoly> rebased(d);
      std::vector<Rat> contribution(d);
      Rat cbin(binomial_int(len, k), BigInt(1));
      for (size_t j = 0; j < d; ++j) {
        BinomialPoly q = polys[j].rebased(D, b);
        if (q.degree() >= k) {
          contribution[j] = q.coeff(k).dist_to_int() * cbin;
          rebased[j] = q.with_coeff(k, Rat(0)).trimmed();
        } else {
          rebased[j] = q;
        }
      }
      RecResult sub = decompose_rec(rebased, len, depth + 1, depth_budget, cfg);
      for (const auto& sp : sub.parts) {
        res.parts.push_back(
            Progression{b + D * sp.start, D * sp.step, sp.length, n});
      }
      for (size_t j = 0; j < d; ++j) {
        Rat total = contribution[j] + sub.cert[j];
        if (total > res.cert[j]) res.cert[j] = total;
      }
    }
  }
  return res;
}

}  // namespace

Decomposition decompose_interval(std::span<const BinomialPoly> polys, i64 n,
                                 int depth_budget, const DecomposeConfig& cfg) {
  if (n < 1) throw ConfigInvalid("decompose_interval: n >= 1 required");
  std::vector<BinomialPoly> ps(polys.begin(), polys.end());
  RecResult rec = decompose_rec(ps, n, 0, depth_budget, cfg);

  Decomposition out;
  out.ambient_n = n;
  out.parts = std::move(rec.parts);
  for (auto& p : out.parts) p.ambient_n = n;
  if (!is_exact_partition(out.parts, n))
    throw Error("decompose_interval: internal partition invariant violated");

  out.min_length = n;
  for (const auto& p : out.parts) out.min_length = std::min(out.min_length, p.length);

  // Certificates (exact, slightly inflated for the double conversion) and
  // exhaustively measured diameters.
  for (size_t j = 0; j < ps.size(); ++j) {
    out.certified_diameter.push_back(
        std::min(0.5, rec.cert[j].to_double() * (1 + 1e-9)));
    std::vector<double> table = mod1_values(ps[j], n);
    double measured = 0.0;
    for (const auto& p : out.parts) {
      if (p.length <= 1) continue;
      std::vector<double> vals;
      vals.reserve(size_t(p.length));
      for (i64 i = 1; i <= p.length; ++i)
        vals.push_back(table[size_t(p.element(i) - 1)]);
      measured = std::max(measured, circle_diameter(std::move(vals)));
    }
    out.measured_diameter.push_back(measured);
  }
  return out;
}

ScalingReport scaling_experiment(int k, int d, std::span<const i64> n_grid,
                                 int trials, u64 seed) {
  for (size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw ConfigInvalid("scaling_experiment: N grid must be increasing");
  ScalingReport rep;
  rep.k = k;
  rep.d = d;
  rep.n_grid.assign(n_grid.begin(), n_grid.end());
  rep.trials = trials;
  Rng rng(seed);
  rep.geo_mean.assign(n_grid.size(), 0.0);
  std::vector<double> logsum(n_grid.size(), 0.0);
  for (int t = 0; t < trials; ++t) {
    Rng local = rng.fork(u64(t));
    std::vector<Rat> alphas;
    for (int i = 0; i < d; ++i)
      alphas.push_back(Rat::from_double_exact(local.next_double()));
    std::vector<double> row;
    double prev = 1.0;
    for (size_t gi = 0; gi < n_grid.size(); ++gi) {
      SchmidtWitness w = min_frac_power(alphas, k, n_grid[gi]);
      row.push_back(w.achieved);
      if (gi > 0 && w.achieved > prev + 1e-15) rep.monotone_ok = false;
      prev = w.achieved;
      logsum[gi] += std::log(std::max(w.achieved, 1e-300));
    }
    rep.values.push_back(std::move(row));
  }
  Eigen::MatrixXd a(n_grid.size(), 2);
  Eigen::VectorXd y(n_grid.size());
  for (size_t gi = 0; gi < n_grid.size(); ++gi) {
    rep.geo_mean[gi] = std::exp(logsum[gi] / std::max(1, trials));
    a(long(gi), 0) = 1.0;
    a(long(gi), 1) = std::log(double(n_grid[gi]));
    y(long(gi)) = std::log(std::max(rep.geo_mean[gi], 1e-300));
  }
  Eigen::Vector2d fit = a.colPivHouseholderQr().solve(y);
  rep.fitted_slope = fit(1);
  return rep;
}

}  // namespace apdec
