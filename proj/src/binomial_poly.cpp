#include "apdec/binomial_poly.hpp"

#include <algorithm>
#include <cmath>

#include "apdec/fracdiam.hpp"

namespace apdec {

BinomialPoly BinomialPoly::from_values(std::span<const Rat> values) {
  if (values.empty()) return BinomialPoly();
  std::vector<Rat> diff(values.begin(), values.end());
  std::vector<Rat> coeffs(values.size());
  coeffs[0] = diff[0];
  for (size_t i = 1; i < values.size(); ++i) {
    for (size_t j = 0; j + 1 < diff.size(); ++j) diff[j] = diff[j + 1] - diff[j];
    diff.pop_back();
    coeffs[i] = diff[0];
  }
  return BinomialPoly(std::move(coeffs));
}

BinomialPoly BinomialPoly::from_monomial(std::span<const Rat> mono) {
  if (mono.empty()) return BinomialPoly();
  std::vector<Rat> values(mono.size());
  for (size_t n = 0; n < mono.size(); ++n) {
    Rat acc;
    for (size_t j = mono.size(); j-- > 0;) acc = acc * Rat(i64(n)) + mono[j];
    values[n] = acc;
  }
  return from_values(values);
}

int BinomialPoly::effective_degree() const {
  for (size_t i = coeffs_.size(); i-- > 0;)
    if (!coeffs_[i].is_zero()) return int(i);
  return 0;
}

bool BinomialPoly::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

bool BinomialPoly::has_integer_coeffs() const {
  for (const auto& c : coeffs_)
    if (!c.is_integer()) return false;
  return true;
}

Rat BinomialPoly::eval(i64 n) const {
  Rat acc;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    acc += coeffs_[i] * Rat(binomial_int(n, int(i)), BigInt(1));
  }
  return acc;
}

std::vector<Rat> BinomialPoly::monomial_coeffs() const {
  std::vector<Rat> out(coeffs_.size());
  // Monomial expansion of C(n, i): prod_{j<i} (n - j) / i!.
  std::vector<Rat> basis{Rat(1)};  // current prod, degree i
  Rat factorial(1);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) {
      // multiply by (n - (i-1))
      std::vector<Rat> next(basis.size() + 1);
      Rat shift = Rat(-i64(i - 1));
      for (size_t j = 0; j < basis.size(); ++j) {
        next[j + 1] += basis[j];
        next[j] += basis[j] * shift;
      }
      basis = std::move(next);
      factorial *= Rat(i64(i));
    }
    if (coeffs_[i].is_zero()) continue;
    Rat scale = coeffs_[i] / factorial;
    for (size_t j = 0; j < basis.size(); ++j) out[j] += basis[j] * scale;
  }
  return out;
}

Rat BinomialPoly::leading_monomial_coeff() const {
  int k = effective_degree();
  Rat fact(1);
  for (int j = 2; j <= k; ++j) fact *= Rat(j);
  return coeffs_[size_t(k)] / fact;
}

BinomialPoly BinomialPoly::trimmed() const {
  size_t sz = coeffs_.size();
  while (sz > 1 && coeffs_[sz - 1].is_zero()) --sz;
  return BinomialPoly(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + sz));
}

BinomialPoly BinomialPoly::with_coeff(int i, Rat v) const {
  std::vector<Rat> c = coeffs_;
  if (size_t(i) >= c.size()) c.resize(size_t(i) + 1);
  c[size_t(i)] = std::move(v);
  return BinomialPoly(std::move(c));
}

BinomialPoly operator+(const BinomialPoly& a, const BinomialPoly& b) {
  std::vector<Rat> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.coeffs_.size()) c[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) c[i] += b.coeffs_[i];
  }
  return BinomialPoly(std::move(c));
}

BinomialPoly operator-(const BinomialPoly& a, const BinomialPoly& b) {
  return a + (-b);
}

BinomialPoly BinomialPoly::operator-() const {
  std::vector<Rat> c = coeffs_;
  for (auto& x : c) x = -x;
  return BinomialPoly(std::move(c));
}

BinomialPoly BinomialPoly::scaled(const Rat& s) const {
  std::vector<Rat> c = coeffs_;
  for (auto& x : c) x *= s;
  return BinomialPoly(std::move(c));
}

BinomialPoly operator*(const BinomialPoly& a, const BinomialPoly& b) {
  int deg = a.effective_degree() + b.effective_degree();
  std::vector<Rat> values(size_t(deg) + 1);
  for (i64 n = 0; n <= deg; ++n) values[size_t(n)] = a.eval(n) * b.eval(n);
  return BinomialPoly::from_values(values);
}

bool BinomialPoly::operator==(const BinomialPoly& o) const {
  size_t n = std::max(coeffs_.size(), o.coeffs_.size());
  for (size_t i = 0; i < n; ++i) {
    Rat x = i < coeffs_.size() ? coeffs_[i] : Rat();
    Rat y = i < o.coeffs_.size() ? o.coeffs_[i] : Rat();
    if (x != y) return false;
  }
  return true;
}

BinomialPoly BinomialPoly::rebased(i64 a, i64 b) const {
  int deg = degree();
  std::vector<Rat> values(size_t(deg) + 1);
  for (i64 n = 0; n <= deg; ++n) values[size_t(n)] = eval(a * n + b);
  return from_values(values);
}

std::string BinomialPoly::to_string() const {
  std::string s;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += " + ";
    s += coeffs_[i].to_string() + "*C(n," + std::to_string(i) + ")";
  }
  return s;
}

Rat smoothness_norm(const BinomialPoly& p, i64 n) {
  Rat best;
  for (int i = 1; i <= p.degree(); ++i) {
    Rat term = Rat(BigInt::pow(BigInt(n), unsigned(i)), BigInt(1)) *
               p.coeff(i).dist_to_int();
    if (term > best) best = term;
  }
  return best;
}

std::vector<double> mod1_values(const BinomialPoly& p, i64 n) {
  std::vector<double> out;
  out.reserve(size_t(n));
  const auto& coeffs = p.coeffs();
  const int deg = p.degree();

  // Fast path: single u64 common denominator; residues tracked with a Pascal
  // row update, no divisions in the loop.
  BigInt lcm(1);
  for (const auto& c : coeffs) {
    BigInt g = BigInt::gcd(lcm, c.den());
    lcm = (lcm / g) * c.den();
  }
  if (lcm.bit_length() <= 62) {
    u64 q = lcm.abs_u64();
    std::vector<u64> cbar(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
      BigInt scaled = coeffs[i].num() * (lcm / coeffs[i].den());
      BigInt r = scaled % BigInt::from_u64(q);
      i64 ri = r.is_zero() ? 0 : r.to_i64();
      cbar[i] = u64(ri < 0 ? ri + i64(q) : ri);
    }
    std::vector<u64> row(size_t(deg) + 1, 0);  // C(n, i) mod q
    row[0] = 1 % q;
    if (deg >= 1) row[1] = 1 % q;  // n = 1
    for (i64 x = 1; x <= n; ++x) {
      unsigned __int128 acc = 0;
      for (size_t i = 0; i < row.size(); ++i) {
        acc += (unsigned __int128)cbar[i] * row[i] % q;
      }
      u64 r = u64(acc % q);
      out.push_back(double(r) / double(q));
      for (size_t i = row.size(); i-- > 1;) {
        row[i] += row[i - 1];
        if (row[i] >= q) row[i] -= q;
      }
    }
    return out;
  }

  for (i64 x = 1; x <= n; ++x) out.push_back(p.eval_mod1(x));
  return out;
}

double mod1_diameter(const BinomialPoly& p, i64 n) {
  return circle_diameter(mod1_values(p, n));
}

SplitResult split_small_int(const BinomialPoly& p, i64 n, double tol,
                            const SplitConfig& cfg) {
  SplitResult res;

  // Precondition check: mod-1 diameter over [n], exhaustive when affordable.
  if (n <= cfg.full_diameter_check_cap) {
    res.measured_diameter = mod1_diameter(p, n);
  } else {
    i64 stride = std::max<i64>(1, n / cfg.full_diameter_check_cap);
    std::vector<double> sample;
    for (i64 x = 1; x <= n; x += stride) sample.push_back(p.eval_mod1(x));
    sample.push_back(p.eval_mod1(n));
    res.measured_diameter = circle_diameter(std::move(sample));
  }
  if (res.measured_diameter > tol * (1 + 1e-12) + 1e-15) {
    throw DiameterTooLarge("split_small_int: measured diameter " +
                           std::to_string(res.measured_diameter) +
                           " exceeds tol " + std::to_string(tol));
  }

  std::vector<Rat> small(p.coeffs().size()), integral(p.coeffs().size());
  for (size_t i = 0; i < p.coeffs().size(); ++i) {
    BigInt rounded = p.coeff(int(i)).round_nearest();
    integral[i] = Rat(rounded, BigInt(1));
    small[i] = p.coeff(int(i)) - integral[i];
  }

  int k = std::max(1, p.effective_degree());
  double mult = std::pow(cfg.bound_multiplier_base, double(k));
  double npow = 1.0;
  for (size_t r = 1; r < small.size(); ++r) {
    npow *= double(n);
    double a = small[r].abs().to_double();
    res.realized_bound = std::max(res.realized_bound, a * npow);
    double allowed = mult * std::max(tol, 0.0);
    if (a * npow > allowed + 1e-15) {
      throw BoundViolation(
          "split_small_int: |alpha_small_" + std::to_string(r) + "| * N^r = " +
          std::to_string(a * npow) + " exceeds " + std::to_string(allowed));
    }
  }
  res.small = BinomialPoly(std::move(small));
  res.integral = BinomialPoly(std::move(integral));
  return res;
}

SmoothnessDiameterReport smoothness_diameter_study(int k, i64 n, double eps, int trials,
                                          u64 seed) {
  SmoothnessDiameterReport rep;
  rep.k = k;
  rep.n = n;
  rep.eps = eps;
  rep.trials = trials;
  Rng rng(seed);
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng local = rng.fork(u64(t));
    std::vector<Rat> coeffs(size_t(k) + 1);
    coeffs[0] = Rat::from_double_exact(local.next_double());
    bool integer_trial = (t % 7 == 6);
    for (int r = 1; r <= k; ++r) {
      i64 m = local.next_i64(-3, 3);
      double cap = eps / (2.0 * double(k) *
                          std::max(1.0, binomial_int(n, r).to_double()));
      double s = integer_trial ? 0.0 : (2.0 * local.next_double() - 1.0) * cap;
      coeffs[size_t(r)] = Rat(m) + Rat::from_double_exact(s);
    }
    BinomialPoly p(coeffs);
    double diam =
        n <= 4096 ? mod1_diameter(p, n) : mod1_diameter(p, 4096);  // window
    double norm = smoothness_norm(p, n).to_double();
    double ratio = 0.0;
    if (diam <= 0.0) {
      ++rep.zero_diameter_trials;
    } else {
      ratio = norm / diam;
    }
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    sum += ratio;
  }
  rep.mean_ratio = trials > 0 ? sum / trials : 0.0;
  return rep;
}

}  // namespace apdec
