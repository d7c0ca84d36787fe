#pragma once

#include <span>
#include <string>
#include <vector>

#include "apdec/rational.hpp"
#include "apdec/rng.hpp"

namespace apdec {

// Polynomial in the binomial basis, P(n) = sum_i alpha_i * C(n, i), with
// exact rational coefficients. In this basis a polynomial maps Z -> Z exactly
// when every coefficient is an integer, which is what the small/integer
// splitting below relies on.
class BinomialPoly {
 public:
  BinomialPoly() : coeffs_(1) {}
  explicit BinomialPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.resize(1);
  }

  static BinomialPoly constant(Rat c) { return BinomialPoly({std::move(c)}); }

  // Unique polynomial of degree <= values.size()-1 through
  // (0, values[0]), (1, values[1]), ... via Newton forward differences.
  static BinomialPoly from_values(std::span<const Rat> values);

  // From monomial coefficients m_0 + m_1 n + ... + m_k n^k.
  static BinomialPoly from_monomial(std::span<const Rat> mono);

  int degree() const { return int(coeffs_.size()) - 1; }
  int effective_degree() const;
  bool is_zero() const;
  bool has_integer_coeffs() const;
  const Rat& coeff(int i) const { return coeffs_[size_t(i)]; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  Rat eval(i64 n) const;
  Rat eval_frac(i64 n) const { return eval(n).frac(); }
  // {P(n)} as a double; the rational is reduced mod 1 before conversion.
  double eval_mod1(i64 n) const { return eval_frac(n).to_double(); }

  std::vector<Rat> monomial_coeffs() const;
  // Monomial leading coefficient alpha_k / k! at the effective degree.
  Rat leading_monomial_coeff() const;

  BinomialPoly trimmed() const;
  BinomialPoly with_coeff(int i, Rat v) const;

  friend BinomialPoly operator+(const BinomialPoly& a, const BinomialPoly& b);
  friend BinomialPoly operator-(const BinomialPoly& a, const BinomialPoly& b);
  BinomialPoly operator-() const;
  BinomialPoly scaled(const Rat& c) const;
  friend BinomialPoly operator*(const BinomialPoly& a, const BinomialPoly& b);
  bool operator==(const BinomialPoly& o) const;

  // Q with Q(n) = P(a*n + b), exactly; declared degree preserved.
  BinomialPoly rebased(i64 a, i64 b) const;

  std::string to_string() const;

 private:
  std::vector<Rat> coeffs_;
};

// ||P||_{C^inf[N]} = max_{1<=i<=k} N^i * ||alpha_i||_{R/Z}. Exact; the
// constant term is excluded. Zero for degree-0 polynomials.
Rat smoothness_norm(const BinomialPoly& p, i64 n);

struct SplitConfig {
  // Multiplier on tol*N^{-r} allowed for the small part's coefficients. The
  // sharp constant is not pinned down anywhere usable, so this stays
  // configurable and generous; realized ratios are reported for audit.
  double bound_multiplier_base = 12.0;  // per-degree base, used as base^k
  i64 full_diameter_check_cap = 4096;   // exhaustive below, strided above
};

struct SplitResult {
  BinomialPoly small;
  BinomialPoly integral;
  double measured_diameter = 0.0;  // from the precondition check
  double realized_bound = 0.0;     // max_r |alpha_small_r| * N^r
};

// P = small + integral with integral mapping Z -> Z (integer binomial
// coefficients). Requires the mod-1 diameter of P over [N] to be <= tol.
SplitResult split_small_int(const BinomialPoly& p, i64 n, double tol,
                            const SplitConfig& cfg = {});

struct SmoothnessDiameterReport {
  int k = 0;
  i64 n = 0;
  double eps = 0.0;
  int trials = 0;
  double max_ratio = 0.0;   // smoothness norm / measured diameter
  double mean_ratio = 0.0;
  int zero_diameter_trials = 0;
  std::vector<double> ratios;
};

// Empirical study of the smoothness-norm-vs-diameter constant: plants
// polynomials satisfying the small-diameter hypothesis and reports the
// realized ratios. Records, never asserts.
SmoothnessDiameterReport smoothness_diameter_study(int k, i64 n, double eps, int trials,
                                          u64 seed);

// Exact mod-1 values of P over the window [1, n] as doubles (values are
// reduced exactly before conversion).
std::vector<double> mod1_values(const BinomialPoly& p, i64 n);

// Exhaustively measured mod-1 diameter of P over [1, n].
double mod1_diameter(const BinomialPoly& p, i64 n);

}  // namespace apdec
