#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apdec/factor.hpp"
#include "apdec/rng.hpp"

using namespace apdec;

namespace {

std::vector<Rat> random_rat_fn(Rng& rng, i64 n) {
  std::vector<Rat> f(static_cast<size_t>(n));
  for (auto& v : f) v = Rat(rng.next_i64(-6, 6), rng.next_i64(1, 5));
  return f;
}

Factor random_factor(Rng& rng, i64 n, i64 nparts) {
  Eigen::ArrayXd g(n);
  for (i64 i = 0; i < n; ++i)
    g[i] = double(rng.next_i64(0, nparts - 1)) / double(nparts);
  return induced_factor(g, nparts);
}

}  // namespace

TEST_CASE("induced factor bucketing") {
  // g(x) = (x-1)/N on [8], K = 4: four parts of two consecutive points under
  // the half-open bucket convention.
  Eigen::ArrayXd g(8);
  for (i64 i = 0; i < 8; ++i) g[i] = double(i) / 8.0;
  Factor f = induced_factor(g, 4);
  CHECK(f.consistent());
  CHECK(f.parts.size() == 4);
  for (const auto& part : f.parts) CHECK(part.size() == 2);
  // direct bucketing oracle
  for (i64 x = 1; x <= 8; ++x)
    for (i64 y = 1; y <= 8; ++y) {
      bool same = f.part_id[size_t(x - 1)] == f.part_id[size_t(y - 1)];
      bool expect = std::floor(4.0 * g[x - 1]) == std::floor(4.0 * g[y - 1]);
      CHECK(same == expect);
    }

  // constant function: one part
  Eigen::ArrayXd c = Eigen::ArrayXd::Constant(10, 0.5);
  CHECK(induced_factor(c, 2).parts.size() == 1);
  // K = 1 with range in [0,1): one part
  Eigen::ArrayXd r(10);
  for (i64 i = 0; i < 10; ++i) r[i] = double(i) / 10.0;
  CHECK(induced_factor(r, 1).parts.size() == 1);
}

TEST_CASE("join identity, idempotence, refinement") {
  Rng rng(2);
  Factor b = random_factor(rng, 12, 3);
  Factor triv = Factor::trivial(12);
  Factor j1 = join(b, triv);
  CHECK(j1.parts == b.parts);
  Factor j2 = join(b, b);
  CHECK(j2.parts == b.parts);

  Factor b2 = random_factor(rng, 12, 3);
  Factor j = join(b, b2);
  CHECK(j.consistent());
  // join = pairwise intersections (set oracle)
  for (i64 x = 1; x <= 12; ++x)
    for (i64 y = 1; y <= 12; ++y) {
      bool same_join = j.part_id[size_t(x - 1)] == j.part_id[size_t(y - 1)];
      bool same_both = b.part_id[size_t(x - 1)] == b.part_id[size_t(y - 1)] &&
                       b2.part_id[size_t(x - 1)] == b2.part_id[size_t(y - 1)];
      CHECK(same_join == same_both);
    }
  // join refines both inputs
  for (const auto& part : j.parts) {
    for (i64 x : part) {
      CHECK(b.part_id[size_t(x - 1)] == b.part_id[size_t(part[0] - 1)]);
      CHECK(b2.part_id[size_t(x - 1)] == b2.part_id[size_t(part[0] - 1)]);
    }
  }
}

TEST_CASE("projection algebra exact on rationals") {
  Rng rng(7);
  for (int t = 0; t < 30; ++t) {
    i64 n = rng.next_i64(6, 24);
    Factor b = random_factor(rng, n, rng.next_i64(2, 5));
    auto f = random_rat_fn(rng, n);
    auto g = random_rat_fn(rng, n);
    auto pf = project(b, f);

    // idempotence
    CHECK(project(b, pf) == pf);
    // mean preservation
    Rat mf, mpf;
    for (i64 i = 0; i < n; ++i) {
      mf += f[size_t(i)];
      mpf += pf[size_t(i)];
    }
    CHECK(mf == mpf);
    // self-adjointness: E[(Pi f) g] = E[f (Pi g)]
    auto pg = project(b, g);
    Rat lhs, rhs;
    for (i64 i = 0; i < n; ++i) {
      lhs += pf[size_t(i)] * g[size_t(i)];
      rhs += f[size_t(i)] * pg[size_t(i)];
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("projection examples") {
  // trivial factor -> constant mean; singleton factor -> identity
  std::vector<Rat> f{Rat(1), Rat(1), Rat(0), Rat(0)};
  Factor triv = Factor::trivial(4);
  auto pt = project(triv, f);
  for (const auto& v : pt) CHECK(v == Rat(1) / Rat(2));
  Factor sing = Factor::singletons(4);
  CHECK(project(sing, f) == f);

  // f = 1_{{1,2}} on [4] with parts {1,2},{3,4} -> (1,1,0,0)
  Eigen::ArrayXd g(4);
  g << 0.0, 0.0, 0.6, 0.6;
  Factor b = induced_factor(g, 2);
  auto pf = project(b, f);
  CHECK(pf[0] == Rat(1));
  CHECK(pf[1] == Rat(1));
  CHECK(pf[2] == Rat(0));
  CHECK(pf[3] == Rat(0));
}

TEST_CASE("energy and Pythagoras exact") {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    i64 n = rng.next_i64(6, 20);
    Factor coarse = random_factor(rng, n, 2);
    Factor fine = join(coarse, random_factor(rng, n, 3));
    auto f = random_rat_fn(rng, n);

    // energy examples
    Rat e_triv = energy_exact(Factor::trivial(n), f);
    Rat mean;
    for (const auto& v : f) mean += v;
    mean /= Rat(n);
    CHECK(e_triv == mean * mean);
    Rat e_sing = energy_exact(Factor::singletons(n), f);
    Rat mean_sq;
    for (const auto& v : f) mean_sq += v * v;
    mean_sq /= Rat(n);
    CHECK(e_sing == mean_sq);

    // Pythagoras: energy(fine) - energy(coarse) = ||Pi_fine f - Pi_coarse f||^2
    auto pf_fine = project(fine, f);
    auto pf_coarse = project(coarse, f);
    Rat gap;
    for (i64 i = 0; i < n; ++i) {
      Rat d = pf_fine[size_t(i)] - pf_coarse[size_t(i)];
      gap += d * d;
    }
    gap /= Rat(n);
    CHECK(energy_exact(fine, f) - energy_exact(coarse, f) == gap);
    // contractivity
    CHECK(energy_exact(fine, f) <= mean_sq);
  }
}

TEST_CASE("regularity maximal function") {
  // g(x) = x/N, K = 1, t = 0: mass spreads evenly, constant near 1.
  i64 n = 64;
  Eigen::ArrayXd g(n);
  for (i64 i = 0; i < n; ++i) g[i] = double(i + 1) / double(n);
  auto rep = regularity(g, 1, 0.0);
  CHECK(rep.constant >= 0.9);
  CHECK(rep.constant <= 2.1);

  // atom at the cut: floor binds and is flagged
  Eigen::ArrayXd atom = Eigen::ArrayXd::Constant(32, 0.25);
  auto rep2 = regularity(atom, 2, 0.5);  // K*g = 0.5 everywhere, t = 0.5
  CHECK(rep2.floor_bound);
  CHECK(rep2.constant > 4.0);
}

TEST_CASE("select_shift finds and revalidates") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    i64 n = rng.next_i64(16, 64);
    i64 K = rng.next_i64(2, 8);
    Eigen::ArrayXd g(n);
    for (i64 i = 0; i < n; ++i) g[i] = rng.next_double();
    ShiftConfig cfg;
    cfg.seed = 1000 + u64(t);
    double shift = select_shift(g, K, cfg);
    CHECK(shift >= 0.0);
    CHECK(shift < 1.0 / double(K));
    double t_scaled = shift == 0.0 ? 0.0 : 1.0 - shift * double(K);
    CHECK(regularity(g, K, t_scaled).constant <= cfg.c);
  }

  // adversarial: all mass exactly at a cut of g itself; a shift moves it away
  Eigen::ArrayXd adv = Eigen::ArrayXd::Constant(40, 0.5);
  ShiftConfig cfg;
  double s = select_shift(adv, 2, cfg);
  double t_scaled = s == 0.0 ? 0.0 : 1.0 - s * 2.0;
  CHECK(regularity(adv, 2, t_scaled).constant <= cfg.c);
}
