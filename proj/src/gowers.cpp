#include "apdec/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace apdec {

Eigen::ArrayXcd dft(const Eigen::ArrayXcd& x, int sign) {
  const i64 n = x.size();
  Eigen::ArrayXcd out(n);
  if (n == 0) return out;
  if (is_pow2(n)) {
    out = x;
    // bit reversal
    for (i64 i = 1, j = 0; i < n; ++i) {
      i64 bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(out[i], out[j]);
    }
    for (i64 len = 2; len <= n; len <<= 1) {
      double ang = double(sign) * 2.0 * std::numbers::pi / double(len);
      cd wlen(std::cos(ang), std::sin(ang));
      for (i64 i = 0; i < n; i += len) {
        cd w(1.0, 0.0);
        for (i64 j = 0; j < len / 2; ++j) {
          cd u = out[i + j];
          cd v = out[i + j + len / 2] * w;
          out[i + j] = u + v;
          out[i + j + len / 2] = u - v;
          w *= wlen;
        }
      }
    }
    return out;
  }
  // Naive transform with a precomputed twiddle table.
  std::vector<cd> tw(static_cast<size_t>(n));
  for (i64 i = 0; i < n; ++i) {
    double ang = double(sign) * 2.0 * std::numbers::pi * double(i) / double(n);
    tw[size_t(i)] = cd(std::cos(ang), std::sin(ang));
  }
  for (i64 k = 0; k < n; ++k) {
    cd acc(0.0, 0.0);
    for (i64 t = 0; t < n; ++t) acc += x[t] * tw[size_t((t * k) % n)];
    out[k] = acc;
  }
  return out;
}

namespace {

double gowers_power_direct(const std::vector<cd>& f, int s) {
  const size_t n = f.size();
  if (s == 1) {
    cd m(0.0, 0.0);
    for (const cd& v : f) m += v;
    m /= double(n);
    return std::norm(m);
  }
  double acc = 0.0;
  std::vector<cd> d(n);
  for (size_t h = 0; h < n; ++h) {
    for (size_t x = 0; x < n; ++x) d[x] = f[x] * std::conj(f[(x + h) % n]);
    acc += gowers_power_direct(d, s - 1);
  }
  return acc / double(n);
}

double root_2s(double power, int s) {
  return std::pow(std::max(power, 0.0), 1.0 / std::ldexp(1.0, s));
}

std::vector<cd> to_vec(const Eigen::ArrayXcd& f) {
  return std::vector<cd>(f.data(), f.data() + f.size());
}

}  // namespace

double gowers_u2_fourier(const Eigen::ArrayXcd& f) {
  const i64 n = f.size();
  Eigen::ArrayXcd hat = dft(f, -1) / double(n);
  double acc = 0.0;
  for (i64 i = 0; i < n; ++i) {
    double m2 = std::norm(hat[i]);
    acc += m2 * m2;
  }
  return std::pow(acc, 0.25);
}

double gowers_norm_cyclic(const Eigen::ArrayXcd& f, int s,
                          const GowersBudget& budget) {
  const i64 n = f.size();
  if (s < 1) throw ConfigInvalid("gowers_norm_cyclic: s >= 1");
  if (n < 1) throw ConfigInvalid("gowers_norm_cyclic: empty function");
  if (s == 2 && n > budget.u2_direct_cap) {
    if (n > (i64(1) << 20))
      throw Infeasible("gowers_norm_cyclic: U^2 beyond the transform cap");
    return gowers_u2_fourier(f);
  }
  double ops = std::pow(double(n), double(std::max(s, 2)));
  if (ops > budget.max_direct_ops)
    throw Infeasible("gowers_norm_cyclic: direct sum over budget at N=" +
                     std::to_string(n) + ", s=" + std::to_string(s));
  return root_2s(gowers_power_direct(to_vec(f), s), s);
}

double gowers_norm_interval(const Eigen::ArrayXcd& f, int s, i64 ntilde,
                            const GowersBudget& budget) {
  const i64 n = f.size();
  if (n < 1) throw ConfigInvalid("gowers_norm_interval: empty function");
  const i64 min_nt = (i64(1) << s) * n;
  if (ntilde == 0) ntilde = next_pow2(min_nt);
  if (ntilde < min_nt)
    throw BadExtension("gowers_norm_interval: Ntilde < 2^s N");
  Eigen::ArrayXcd ext = Eigen::ArrayXcd::Zero(ntilde);
  Eigen::ArrayXcd ind = Eigen::ArrayXcd::Zero(ntilde);
  for (i64 x = 1; x <= n; ++x) {
    ext[x % ntilde] = f[x - 1];
    ind[x % ntilde] = cd(1.0, 0.0);
  }
  double num = gowers_norm_cyclic(ext, s, budget);
  double den = gowers_norm_cyclic(ind, s, budget);
  return num / den;
}

cd ap_operator(std::span<const Eigen::ArrayXcd> fs) {
  const int k = int(fs.size());
  if (k < 3) throw ConfigInvalid("ap_operator: k >= 3 required");
  const i64 n = fs[0].size();
  for (const auto& f : fs)
    if (f.size() != n) throw AmbientMismatch("ap_operator: mixed lengths");
  cd acc(0.0, 0.0);
  for (i64 x = 0; x <= n; ++x) {
    for (i64 y = 0; y <= n; ++y) {
      cd prod(1.0, 0.0);
      bool zero = false;
      for (int j = 0; j < k && !zero; ++j) {
        i64 z = x + i64(j) * y;
        if (z < 1 || z > n) {
          zero = true;
        } else {
          prod *= fs[size_t(j)][z - 1];
        }
      }
      if (!zero) acc += prod;
    }
  }
  double denom = double(n + 1) * double(n + 1);
  return acc / denom;
}

double ap_operator_real(std::span<const Eigen::ArrayXcd> fs) {
  cd v = ap_operator(fs);
  if (std::fabs(v.imag()) >= 1e-12)
    throw Error("ap_operator_real: imaginary residue " +
                std::to_string(v.imag()));
  return v.real();
}

Rat ap_operator_exact(std::span<const std::vector<Rat>> fs) {
  const int k = int(fs.size());
  if (k < 3) throw ConfigInvalid("ap_operator_exact: k >= 3 required");
  const i64 n = i64(fs[0].size());
  for (const auto& f : fs)
    if (i64(f.size()) != n)
      throw AmbientMismatch("ap_operator_exact: mixed lengths");
  Rat acc;
  for (i64 x = 0; x <= n; ++x) {
    for (i64 y = 0; y <= n; ++y) {
      Rat prod(1);
      bool zero = false;
      for (int j = 0; j < k && !zero; ++j) {
        i64 z = x + i64(j) * y;
        if (z < 1 || z > n)
          zero = true;
        else if (fs[size_t(j)][size_t(z - 1)].is_zero())
          zero = true;
        else
          prod *= fs[size_t(j)][size_t(z - 1)];
      }
      if (!zero) acc += prod;
    }
  }
  return acc / Rat((n + 1) * (n + 1));
}

i64 ap_count_indicator(const std::vector<char>& membership, int k) {
  const i64 n = i64(membership.size());  // membership[i] for element i+1
  i64 count = 0;
  for (i64 x = 0; x <= n; ++x) {
    for (i64 y = 0; y <= n; ++y) {
      bool all = true;
      for (int j = 0; j < k && all; ++j) {
        i64 z = x + i64(j) * y;
        all = z >= 1 && z <= n && membership[size_t(z - 1)];
      }
      if (all) ++count;
      if (y > 0 && x + i64(k - 1) * y > n) break;  // later y only grow
    }
  }
  return count;
}

VonNeumannReport von_neumann_check(std::span<const Eigen::ArrayXcd> fs,
                                   const GowersBudget& budget) {
  const int k = int(fs.size());
  VonNeumannReport rep;
  rep.lambda = std::abs(ap_operator(fs));
  const i64 n = fs[0].size();

  std::vector<double> l1(fs.size()), linf(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    double s = 0.0, m = 0.0;
    for (i64 x = 0; x < n; ++x) {
      s += std::abs(fs[i][x]);
      m = std::max(m, std::abs(fs[i][x]));
    }
    l1[i] = s / double(n);
    linf[i] = m;
  }
  rep.l1_bound = 0.0;
  for (size_t i = 0; i < fs.size(); ++i) {
    double b = l1[i];
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != i) b *= linf[j];
    rep.l1_bound = i == 0 ? b : std::min(rep.l1_bound, b);
  }
  rep.l1_ok = rep.lambda <= rep.l1_bound + 1e-12;

  // U^{k-1}[N] side, budget permitting.
  double ops = std::pow(double(next_pow2((i64(1) << (k - 1)) * n)), double(k - 1));
  if (k - 1 == 2 || ops <= budget.max_direct_ops) {
    rep.u_side_computed = true;
    rep.u_bound = 0.0;
    for (size_t i = 0; i < fs.size(); ++i) {
      double b = gowers_norm_interval(fs[i], k - 1, 0, budget);
      for (size_t j = 0; j < fs.size(); ++j)
        if (j != i) b *= linf[j];
      rep.u_bound = i == 0 ? b : std::min(rep.u_bound, b);
    }
    rep.ratio = rep.u_bound > 1e-300 ? rep.lambda / rep.u_bound : 0.0;
  }
  return rep;
}

}  // namespace apdec
