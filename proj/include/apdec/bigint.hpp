#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "apdec/common.hpp"

namespace apdec {

// Arbitrary-precision signed integer, sign-magnitude with 32-bit limbs.
// Schoolbook arithmetic throughout; operands in this codebase stay within a
// few dozen limbs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(i64 v);  // implicit, mirrors integer literals

  static BigInt from_u64(u64 v);
  static BigInt parse(std::string_view s);  // optional '-', decimal digits
  static BigInt pow2(unsigned e);
  static BigInt pow(const BigInt& base, unsigned e);
  static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);
  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }

  // Truncated division (round toward zero); remainder carries the sign of a.
  static void divmod_trunc(const BigInt& a, const BigInt& b, BigInt& q,
                           BigInt& r);
  // Floor division; for b > 0 the remainder lies in [0, b).
  static void divmod_floor(const BigInt& a, const BigInt& b, BigInt& q,
                           BigInt& r);
  BigInt operator/(const BigInt& b) const;  // truncated
  BigInt operator%(const BigInt& b) const;  // truncated remainder

  BigInt shifted_left(unsigned bits) const;
  BigInt shifted_right(unsigned bits) const;

  int compare(const BigInt& o) const;
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  std::size_t bit_length() const;
  bool fits_i64() const;
  i64 to_i64() const;  // requires fits_i64()
  bool fits_u64_abs() const { return bit_length() <= 64; }
  u64 abs_u64() const;  // low 64 bits of |x|; requires fits_u64_abs()
  double to_double() const;
  std::string to_string() const;

 private:
  int sign_ = 0;
  std::vector<u32> mag_;  // little-endian, trimmed

  void trim();
  static int cmp_mag(const std::vector<u32>& a, const std::vector<u32>& b);
  static std::vector<u32> add_mag(const std::vector<u32>& a,
                                  const std::vector<u32>& b);
  // requires |a| >= |b|
  static std::vector<u32> sub_mag(const std::vector<u32>& a,
                                  const std::vector<u32>& b);
  static std::vector<u32> mul_mag(const std::vector<u32>& a,
                                  const std::vector<u32>& b);
  static void divmod_mag(const std::vector<u32>& a, const std::vector<u32>& b,
                         std::vector<u32>& q, std::vector<u32>& r);
  static u32 divmod_mag_small(std::vector<u32>& a, u32 d);  // in-place, ret rem
};

}  // namespace apdec
