#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "apdec/bigint.hpp"

namespace apdec {

// Exact rational number. Always normalized: den > 0, gcd(|num|, den) = 1,
// zero is 0/1. Doubles entering the toolkit are snapped through
// from_double_exact (the dyadic embedding), so everything downstream is exact.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(i64 v) : num_(v), den_(1) {}  // implicit, mirrors integer literals
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }

  static Rat from_double_exact(double x) {
    if (!std::isfinite(x)) throw ConfigInvalid("Rat: non-finite double");
    if (x == 0.0) return Rat();
    int e;
    double m = std::frexp(x, &e);
    i64 mant = i64(std::ldexp(m, 53));  // |mant| in [2^52, 2^53)
    int e2 = e - 53;
    if (e2 >= 0) return Rat(BigInt(mant).shifted_left(unsigned(e2)), BigInt(1));
    return Rat(BigInt(mant), BigInt::pow2(unsigned(-e2)));
  }

  // Accepts "p", "-p", "p/q". Anything with '.', 'e' or 'E' is parsed as a
  // double and snapped to its exact dyadic value.
  static Rat parse(std::string_view s) {
    if (s.find_first_of(".eE") != std::string_view::npos &&
        s.find('/') == std::string_view::npos) {
      return from_double_exact(std::stod(std::string(s)));
    }
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(BigInt::parse(s), BigInt(1));
    return Rat(BigInt::parse(s.substr(0, slash)),
               BigInt::parse(s.substr(slash + 1)));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int sign() const { return num_.sign(); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw Error("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  int compare(const Rat& o) const {
    return (num_ * o.den_).compare(o.num_ * den_);
  }
  bool operator==(const Rat& o) const { return compare(o) == 0; }
  bool operator!=(const Rat& o) const { return compare(o) != 0; }
  bool operator<(const Rat& o) const { return compare(o) < 0; }
  bool operator<=(const Rat& o) const { return compare(o) <= 0; }
  bool operator>(const Rat& o) const { return compare(o) > 0; }
  bool operator>=(const Rat& o) const { return compare(o) >= 0; }

  BigInt floor() const {
    BigInt q, r;
    BigInt::divmod_floor(num_, den_, q, r);
    return q;
  }

  // Nearest integer, ties rounded up.
  BigInt round_nearest() const {
    Rat shifted = *this + Rat(BigInt(1), BigInt(2));
    return shifted.floor();
  }

  // Fractional part {x} in [0, 1).
  Rat frac() const {
    BigInt q, r;
    BigInt::divmod_floor(num_, den_, q, r);
    return Rat(std::move(r), den_);
  }

  // Distance to the nearest integer, in [0, 1/2].
  Rat dist_to_int() const {
    Rat f = frac();
    Rat g = Rat(1) - f;
    return f <= g ? f : g;
  }

  Rat abs() const { return num_.is_negative() ? -*this : *this; }

  double to_double() const { return num_.to_double() / den_.to_double(); }

  std::string to_string() const {
    if (is_integer()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

 private:
  BigInt num_, den_;

  void normalize() {
    if (den_.is_zero()) throw Error("Rat: zero denominator");
    if (den_.is_negative()) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
};

// C(n, i) for any integer n and small i >= 0; exact (stepwise division by j
// keeps the accumulator integral).
inline BigInt binomial_int(i64 n, int i) {
  if (i < 0) return BigInt(0);
  BigInt acc(1);
  for (int j = 1; j <= i; ++j) {
    acc *= BigInt(n - j + 1);
    acc = acc / BigInt(j);
  }
  return acc;
}

}  // namespace apdec
