#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "apdec/gowers.hpp"
#include "apdec/rng.hpp"

using namespace apdec;

namespace {

Eigen::ArrayXcd random_signs(Rng& rng, i64 n) {
  Eigen::ArrayXcd f(n);
  for (i64 i = 0; i < n; ++i) f[i] = rng.next_bool() ? 1.0 : -1.0;
  return f;
}

Eigen::ArrayXcd random_bounded(Rng& rng, i64 n) {
  Eigen::ArrayXcd f(n);
  for (i64 i = 0; i < n; ++i) {
    double r = rng.next_double();
    double th = 2.0 * std::numbers::pi * rng.next_double();
    f[i] = cd(r * std::cos(th), r * std::sin(th));
  }
  return f;
}

Eigen::ArrayXcd character(i64 n, i64 xi) {
  Eigen::ArrayXcd f(n);
  for (i64 x = 0; x < n; ++x) {
    double ang = 2.0 * std::numbers::pi * double(xi) * double(x) / double(n);
    f[x] = cd(std::cos(ang), std::sin(ang));
  }
  return f;
}

// Independent naive DFT (no FFT, no twiddle table sharing with the library).
Eigen::ArrayXcd naive_dft(const Eigen::ArrayXcd& x) {
  const i64 n = x.size();
  Eigen::ArrayXcd out(n);
  for (i64 k = 0; k < n; ++k) {
    cd acc(0, 0);
    for (i64 t = 0; t < n; ++t) {
      double ang = -2.0 * std::numbers::pi * double(t) * double(k) / double(n);
      acc += x[t] * cd(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace

TEST_CASE("fft agrees with naive dft") {
  Rng rng(5);
  for (i64 n : {8, 16, 64, 37, 100}) {
    Eigen::ArrayXcd x = random_bounded(rng, n);
    Eigen::ArrayXcd a = dft(x, -1);
    Eigen::ArrayXcd b = naive_dft(x);
    for (i64 i = 0; i < n; ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
  }
}

TEST_CASE("gowers norm basics") {
  // constant function: ||c||_{U^s} = |c|
  Eigen::ArrayXcd c = Eigen::ArrayXcd::Constant(32, cd(0.7, 0.0));
  for (int s = 1; s <= 3; ++s)
    CHECK(gowers_norm_cyclic(c, s) == doctest::Approx(0.7).epsilon(1e-10));

  // additive character: all derivatives collapse, norm 1 for s >= 2
  Eigen::ArrayXcd chi = character(32, 5);
  for (int s = 2; s <= 3; ++s)
    CHECK(gowers_norm_cyclic(chi, s) == doctest::Approx(1.0).epsilon(1e-10));
  // U^1 is a seminorm: a nontrivial character has mean zero
  CHECK(gowers_norm_cyclic(chi, 1) < 1e-12);

  // U^1 identity: |E f|
  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    Eigen::ArrayXcd f = random_bounded(rng, 48);
    cd mean = f.mean();
    CHECK(gowers_norm_cyclic(f, 1) ==
          doctest::Approx(std::abs(mean)).epsilon(1e-12));
  }
}

TEST_CASE("U^2 Fourier identity vs direct sum") {
  Rng rng(77);
  for (i64 n : {16, 37, 64}) {
    for (int t = 0; t < 5; ++t) {
      Eigen::ArrayXcd f = random_signs(rng, n);
      double direct = gowers_norm_cyclic(f, 2);
      double fourier = gowers_u2_fourier(f);
      CHECK(direct == doctest::Approx(fourier).epsilon(1e-10));
      // Independent oracle: naive DFT, expectation normalization.
      Eigen::ArrayXcd hat = naive_dft(f) / double(n);
      double acc = 0;
      for (i64 i = 0; i < n; ++i) acc += std::norm(hat[i]) * std::norm(hat[i]);
      CHECK(std::pow(acc, 0.25) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("gowers monotonicity in s") {
  Rng rng(31);
  for (int t = 0; t < 8; ++t) {
    Eigen::ArrayXcd f = random_bounded(rng, 24);
    double u1 = gowers_norm_cyclic(f, 1);
    double u2 = gowers_norm_cyclic(f, 2);
    double u3 = gowers_norm_cyclic(f, 3);
    double u4 = gowers_norm_cyclic(f, 4);
    CHECK(u1 <= u2 + 1e-9);
    CHECK(u2 <= u3 + 1e-9);
    CHECK(u3 <= u4 + 1e-9);
  }
}

TEST_CASE("modulation invariance") {
  Rng rng(90);
  Eigen::ArrayXcd f = random_bounded(rng, 30);
  Eigen::ArrayXcd chi = character(30, 7);
  Eigen::ArrayXcd g = f * chi;
  for (int s = 2; s <= 3; ++s)
    CHECK(gowers_norm_cyclic(f, s) ==
          doctest::Approx(gowers_norm_cyclic(g, s)).epsilon(1e-9));
}

TEST_CASE("interval norm properties") {
  // indicator normalizes to 1
  Eigen::ArrayXcd one = Eigen::ArrayXcd::Constant(20, cd(1.0, 0.0));
  CHECK(gowers_norm_interval(one, 2) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(20);
  CHECK(gowers_norm_interval(zero, 2) == 0.0);

  // independence of the choice of Ntilde
  Rng rng(123);
  Eigen::ArrayXcd f = random_bounded(rng, 20);
  double a = gowers_norm_interval(f, 2, 80);
  double b = gowers_norm_interval(f, 2, 101);
  double c = gowers_norm_interval(f, 2, 128);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a == doctest::Approx(c).epsilon(1e-9));

  CHECK_THROWS_AS(gowers_norm_interval(f, 2, 79), BadExtension);
  CHECK_THROWS_AS(gowers_norm_cyclic(random_bounded(rng, 600), 4, {}),
                  Infeasible);
}

TEST_CASE("ap operator spec examples") {
  // A = {1,2,4} in [5]: Lambda_3 = 3/36 = 1/12, only y=0 survives.
  std::vector<Rat> ind(5);
  ind[0] = ind[1] = ind[3] = Rat(1);
  std::vector<std::vector<Rat>> fs{ind, ind, ind};
  CHECK(ap_operator_exact(fs) == Rat(1) / Rat(12));

  std::vector<char> mem{1, 1, 0, 1, 0};
  CHECK(ap_count_indicator(mem, 3) == 3);

  // zero function
  Eigen::ArrayXcd z = Eigen::ArrayXcd::Zero(6);
  std::vector<Eigen::ArrayXcd> zs{z, z, z};
  CHECK(std::abs(ap_operator(zs)) == 0.0);

  // full interval, N = 10: brute count / 121
  std::vector<char> full(10, 1);
  i64 cnt = 0;
  for (i64 x = 0; x <= 10; ++x)
    for (i64 y = 0; y <= 10; ++y) {
      bool ok = true;
      for (int j = 0; j < 3; ++j) {
        i64 zz = x + j * y;
        ok = ok && zz >= 1 && zz <= 10;
      }
      if (ok) ++cnt;
    }
  CHECK(ap_count_indicator(full, 3) == cnt);
  Eigen::ArrayXcd onef = Eigen::ArrayXcd::Constant(10, cd(1, 0));
  std::vector<Eigen::ArrayXcd> ones{onef, onef, onef};
  CHECK(ap_operator_real(ones) ==
        doctest::Approx(double(cnt) / 121.0).epsilon(1e-12));
}

TEST_CASE("ap operator enumeration oracle on random sets") {
  Rng rng(2718);
  for (int t = 0; t < 20; ++t) {
    i64 n = rng.next_i64(5, 60);
    std::vector<char> mem(static_cast<size_t>(n));
    std::vector<Rat> ind(static_cast<size_t>(n));
    for (i64 i = 0; i < n; ++i) {
      mem[size_t(i)] = rng.next_bool();
      ind[size_t(i)] = Rat(mem[size_t(i)] ? 1 : 0);
    }
    // Independent enumeration: count 3-term patterns directly from the set.
    i64 cnt = 0;
    for (i64 x = 1; x <= n; ++x)
      for (i64 y = 0; x + 2 * y <= n; ++y)
        if (mem[size_t(x - 1)] && mem[size_t(x + y - 1)] &&
            mem[size_t(x + 2 * y - 1)])
          ++cnt;
    CHECK(ap_count_indicator(mem, 3) == cnt);
    std::vector<std::vector<Rat>> fs{ind, ind, ind};
    CHECK(ap_operator_exact(fs) == Rat(cnt) / Rat((n + 1) * (n + 1)));
  }
}

TEST_CASE("Lambda_k multilinearity in each slot (exact)") {
  Rng rng(55);
  i64 n = 12;
  auto rand_rat_fn = [&]() {
    std::vector<Rat> f(static_cast<size_t>(n));
    for (auto& v : f) v = Rat(rng.next_i64(-3, 3), rng.next_i64(1, 4));
    return f;
  };
  auto f1 = rand_rat_fn(), f2 = rand_rat_fn(), f3 = rand_rat_fn(),
       g1 = rand_rat_fn();
  Rat a(2), bco(-3);
  // slot-1 linearity
  std::vector<Rat> combo(static_cast<size_t>(n));
  for (size_t i = 0; i < combo.size(); ++i)
    combo[i] = a * f1[i] + bco * g1[i];
  std::vector<std::vector<Rat>> left{combo, f2, f3};
  std::vector<std::vector<Rat>> r1{f1, f2, f3}, r2{g1, f2, f3};
  CHECK(ap_operator_exact(left) ==
        a * ap_operator_exact(r1) + bco * ap_operator_exact(r2));
}

TEST_CASE("von Neumann L1 bound with constant one") {
  Rng rng(404);
  for (int t = 0; t < 30; ++t) {
    i64 n = rng.next_i64(8, 48);
    std::vector<Eigen::ArrayXcd> fs;
    for (int j = 0; j < 3; ++j) fs.push_back(random_bounded(rng, n));
    auto rep = von_neumann_check(fs);
    CHECK(rep.l1_ok);
    CHECK(rep.u_side_computed);
  }
  // one zero slot forces Lambda = 0
  Eigen::ArrayXcd z = Eigen::ArrayXcd::Zero(16);
  Eigen::ArrayXcd o = Eigen::ArrayXcd::Constant(16, cd(1, 0));
  std::vector<Eigen::ArrayXcd> fs{z, o, o};
  auto rep = von_neumann_check(fs);
  CHECK(rep.lambda == 0.0);
  CHECK(rep.l1_ok);
}

TEST_CASE("telescoping slot bound on random pairs") {
  // |Lambda_k(f) - Lambda_k(g)| <= k * max slot-wise L1 difference bound
  Rng rng(33);
  for (int t = 0; t < 10; ++t) {
    i64 n = 20;
    Eigen::ArrayXcd f = random_bounded(rng, n);
    Eigen::ArrayXcd g = random_bounded(rng, n);
    std::vector<Eigen::ArrayXcd> ff{f, f, f}, gg{g, g, g};
    double lhs = std::abs(ap_operator(ff) - ap_operator(gg));
    double diff_l1 = (f - g).abs().mean();
    CHECK(lhs <= 3 * diff_l1 + 1e-9);
  }
}
