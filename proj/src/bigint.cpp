#include "apdec/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace apdec {

namespace {
constexpr u64 kBase = 1ull << 32;
}

BigInt::BigInt(i64 v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  u64 m = v < 0 ? ~u64(v) + 1 : u64(v);
  mag_.push_back(u32(m));
  if (m >> 32) mag_.push_back(u32(m >> 32));
}

BigInt BigInt::from_u64(u64 v) {
  BigInt r;
  if (v == 0) return r;
  r.sign_ = 1;
  r.mag_.push_back(u32(v));
  if (v >> 32) r.mag_.push_back(u32(v >> 32));
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<u32>& a, const std::vector<u32>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<u32> BigInt::add_mag(const std::vector<u32>& a,
                                 const std::vector<u32>& b) {
  const std::vector<u32>& x = a.size() >= b.size() ? a : b;
  const std::vector<u32>& y = a.size() >= b.size() ? b : a;
  std::vector<u32> out(x.size() + 1, 0);
  u64 carry = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    u64 s = u64(x[i]) + (i < y.size() ? y[i] : 0) + carry;
    out[i] = u32(s);
    carry = s >> 32;
  }
  out[x.size()] = u32(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<u32> BigInt::sub_mag(const std::vector<u32>& a,
                                 const std::vector<u32>& b) {
  std::vector<u32> out(a.size(), 0);
  i64 borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    i64 d = i64(a[i]) - (i < b.size() ? i64(b[i]) : 0) - borrow;
    if (d < 0) {
      d += i64(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = u32(d);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<u32> BigInt::mul_mag(const std::vector<u32>& a,
                                 const std::vector<u32>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u32> out(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    u64 carry = 0;
    u64 ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      u64 t = ai * b[j] + out[i + j] + carry;
      out[i + j] = u32(t);
      carry = t >> 32;
    }
    out[i + b.size()] = u32(carry);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

u32 BigInt::divmod_mag_small(std::vector<u32>& a, u32 d) {
  u64 rem = 0;
  for (size_t i = a.size(); i-- > 0;) {
    u64 cur = (rem << 32) | a[i];
    a[i] = u32(cur / d);
    rem = cur % d;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return u32(rem);
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::divmod_mag(const std::vector<u32>& a, const std::vector<u32>& b,
                        std::vector<u32>& q, std::vector<u32>& r) {
  if (b.empty()) throw Error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    q = a;
    u32 rem = divmod_mag_small(q, b[0]);
    r.clear();
    if (rem) r.push_back(rem);
    return;
  }

  // Normalize so the divisor's top limb has its high bit set.
  int shift = 0;
  for (u32 top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  const size_t n = b.size();
  const size_t m = a.size() - n;

  std::vector<u32> d(n, 0);
  std::vector<u32> u(a.size() + 1, 0);
  if (shift == 0) {
    d = b;
    std::copy(a.begin(), a.end(), u.begin());
  } else {
    for (size_t i = 0; i < n; ++i)
      d[i] = (b[i] << shift) | (i ? b[i - 1] >> (32 - shift) : 0);
    for (size_t i = 0; i < a.size(); ++i)
      u[i] = (a[i] << shift) | (i ? a[i - 1] >> (32 - shift) : 0);
    u[a.size()] = a.back() >> (32 - shift);
  }

  q.assign(m + 1, 0);
  const u64 dtop = d[n - 1];
  const u64 dsecond = d[n - 2];
  for (size_t j = m + 1; j-- > 0;) {
    u64 numer = (u64(u[j + n]) << 32) | u[j + n - 1];
    u64 qhat = numer / dtop;
    u64 rhat = numer % dtop;
    if (qhat >= kBase) {
      qhat = kBase - 1;
      rhat = numer - qhat * dtop;
    }
    while (rhat < kBase && qhat * dsecond > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += dtop;
    }
    // Multiply-subtract qhat * d from u[j .. j+n].
    i64 borrow = 0;
    u64 carry = 0;
    for (size_t i = 0; i < n; ++i) {
      u64 p = qhat * d[i] + carry;
      carry = p >> 32;
      i64 t = i64(u[i + j]) - i64(u32(p)) - borrow;
      if (t < 0) {
        t += i64(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = u32(t);
    }
    i64 t = i64(u[j + n]) - i64(carry) - borrow;
    if (t < 0) {
      // qhat was one too large: add d back.
      t += i64(kBase);
      --qhat;
      u64 c2 = 0;
      for (size_t i = 0; i < n; ++i) {
        u64 s = u64(u[i + j]) + d[i] + c2;
        u[i + j] = u32(s);
        c2 = s >> 32;
      }
      t += i64(c2);
    }
    u[j + n] = u32(t);
    q[j] = u32(qhat);
  }

  // Denormalize remainder.
  r.assign(n, 0);
  if (shift == 0) {
    std::copy(u.begin(), u.begin() + n, r.begin());
  } else {
    for (size_t i = 0; i < n; ++i)
      r[i] = (u[i] >> shift) | (i + 1 < n + 1 ? (u[i + 1] << (32 - shift)) : 0);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  while (!r.empty() && r.back() == 0) r.pop_back();
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  if (sign_ == o.sign_) {
    mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) {
      sign_ = 0;
      mag_.clear();
    } else if (c > 0) {
      mag_ = sub_mag(mag_, o.mag_);
    } else {
      mag_ = sub_mag(o.mag_, mag_);
      sign_ = o.sign_;
    }
  }
  trim();
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) {
  BigInt neg = o;
  neg.sign_ = -neg.sign_;
  return *this += neg;
}

BigInt& BigInt::operator*=(const BigInt& o) {
  if (sign_ == 0 || o.sign_ == 0) {
    sign_ = 0;
    mag_.clear();
    return *this;
  }
  mag_ = mul_mag(mag_, o.mag_);
  sign_ = sign_ * o.sign_;
  trim();
  return *this;
}

void BigInt::divmod_trunc(const BigInt& a, const BigInt& b, BigInt& q,
                          BigInt& r) {
  std::vector<u32> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q.mag_ = std::move(qm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.mag_ = std::move(rm);
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

void BigInt::divmod_floor(const BigInt& a, const BigInt& b, BigInt& q,
                          BigInt& r) {
  divmod_trunc(a, b, q, r);
  // Adjust when truncation and floor disagree (operands of opposite sign
  // with nonzero remainder).
  if (!r.is_zero() && (a.sign_ * b.sign_) < 0) {
    q -= BigInt(1);
    r += b;
  }
}

BigInt BigInt::operator/(const BigInt& b) const {
  BigInt q, r;
  divmod_trunc(*this, b, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& b) const {
  BigInt q, r;
  divmod_trunc(*this, b, q, r);
  return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  // Binary GCD on magnitudes.
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  BigInt x = a.abs(), y = b.abs();
  unsigned shift = 0;
  while (!x.is_odd() && !y.is_odd()) {
    x = x.shifted_right(1);
    y = y.shifted_right(1);
    ++shift;
  }
  while (!x.is_odd()) x = x.shifted_right(1);
  while (!y.is_zero()) {
    while (!y.is_odd()) y = y.shifted_right(1);
    if (x > y) std::swap(x, y);
    y -= x;
  }
  return x.shifted_left(shift);
}

BigInt BigInt::shifted_left(unsigned bits) const {
  if (is_zero() || bits == 0) return *this;
  unsigned limbs = bits / 32, rem = bits % 32;
  BigInt out;
  out.sign_ = sign_;
  out.mag_.assign(mag_.size() + limbs + 1, 0);
  for (size_t i = 0; i < mag_.size(); ++i) {
    u64 v = u64(mag_[i]) << rem;
    out.mag_[i + limbs] |= u32(v);
    out.mag_[i + limbs + 1] |= u32(v >> 32);
  }
  out.trim();
  return out;
}

BigInt BigInt::shifted_right(unsigned bits) const {
  if (is_zero()) return *this;
  unsigned limbs = bits / 32, rem = bits % 32;
  if (limbs >= mag_.size()) return BigInt();
  BigInt out;
  out.sign_ = sign_;
  out.mag_.assign(mag_.begin() + limbs, mag_.end());
  if (rem) {
    for (size_t i = 0; i < out.mag_.size(); ++i) {
      u64 hi = (i + 1 < out.mag_.size()) ? out.mag_[i + 1] : 0;
      out.mag_[i] = u32((u64(out.mag_[i]) >> rem) | (hi << (32 - rem)));
    }
  }
  out.trim();
  return out;
}

BigInt BigInt::pow2(unsigned e) { return BigInt(1).shifted_left(e); }

BigInt BigInt::pow(const BigInt& base, unsigned e) {
  BigInt result(1), b = base;
  while (e) {
    if (e & 1) result *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return result;
}

int BigInt::compare(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  u32 top = mag_.back();
  std::size_t bits = (mag_.size() - 1) * 32;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::fits_i64() const {
  size_t bl = bit_length();
  if (bl < 64) return true;
  if (bl > 64) return false;
  // Exactly 64 bits: only -2^63 fits.
  return sign_ < 0 && mag_[0] == 0 && mag_[1] == 0x80000000u;
}

i64 BigInt::to_i64() const {
  u64 m = abs_u64();
  return sign_ < 0 ? -i64(m) : i64(m);
}

u64 BigInt::abs_u64() const {
  u64 m = 0;
  if (mag_.size() > 1) m = u64(mag_[1]) << 32;
  if (!mag_.empty()) m |= mag_[0];
  return m;
}

double BigInt::to_double() const {
  if (is_zero()) return 0.0;
  size_t bl = bit_length();
  if (bl <= 64) return double(sign_) * double(abs_u64());
  // Take the top 64 bits and scale.
  BigInt top = shifted_right(unsigned(bl - 64));
  return std::ldexp(double(sign_) * double(top.abs_u64()), int(bl - 64));
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<u32> work = mag_;
  std::string digits;
  while (!work.empty()) {
    u32 rem = divmod_mag_small(work, 1000000000u);
    for (int i = 0; i < 9; ++i) {
      digits.push_back(char('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

BigInt BigInt::parse(std::string_view s) {
  if (s.empty()) throw ConfigInvalid("BigInt: empty string");
  bool neg = false;
  size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw ConfigInvalid("BigInt: no digits");
  static const i64 kPow10[10] = {1,      10,      100,      1000,      10000,
                                 100000, 1000000, 10000000, 100000000, 1000000000};
  BigInt acc;
  while (i < s.size()) {
    size_t take = std::min<size_t>(9, s.size() - i);
    u32 chunk = 0;
    for (size_t j = 0; j < take; ++j) {
      char c = s[i + j];
      if (c < '0' || c > '9') throw ConfigInvalid("BigInt: bad digit");
      chunk = chunk * 10 + u32(c - '0');
    }
    acc = acc * BigInt(kPow10[take]) + BigInt(i64(chunk));
    i += take;
  }
  if (neg) acc.sign_ = -acc.sign_;
  return acc;
}

}  // namespace apdec
