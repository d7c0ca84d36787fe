#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apdec/nilmanifold.hpp"
#include "apdec/rng.hpp"

using namespace apdec;

namespace {

Rat rr(i64 n, i64 d) { return Rat(n) / Rat(d); }

NilPoint heis_pt(Rat a, Rat b, Rat c) {
  return NilPoint{&NilCatalogEntry::heisenberg(), {a, b, c}};
}

NilPoint random_heis(Rng& rng) {
  return heis_pt(Rat(rng.next_i64(-40, 40), rng.next_i64(1, 9)),
                 Rat(rng.next_i64(-40, 40), rng.next_i64(1, 9)),
                 Rat(rng.next_i64(-40, 40), rng.next_i64(1, 9)));
}

}  // namespace

TEST_CASE("catalog structure") {
  const auto& h = NilCatalogEntry::heisenberg();
  CHECK(h.dim() == 3);
  CHECK(h.degree() == 2);
  CHECK(h.subgroup_dim(1) == 3);
  CHECK(h.subgroup_dim(2) == 1);
  CHECK(h.subgroup_dim(3) == 0);
  CHECK(h.basis_level(1) == 1);
  CHECK(h.basis_level(2) == 1);
  CHECK(h.basis_level(3) == 2);
  CHECK(h.horizontal_dim(1) == 2);
  CHECK(h.horizontal_dim(2) == 3);
  CHECK(h.type() == 1);

  const auto& t3 = NilCatalogEntry::torus(3, 2);
  CHECK(t3.dim() == 3);
  CHECK(t3.type() == 2);
  CHECK(t3.basis_level(2) == 2);
  CHECK(t3.horizontal_dim(1) == 0);
  CHECK(t3.horizontal_dim(2) == 3);
  CHECK_THROWS_AS(NilCatalogEntry::torus(9), ConfigInvalid);
  // Same parameters give the same cached entry.
  CHECK(&NilCatalogEntry::torus(2) == &NilCatalogEntry::torus(2));
}

TEST_CASE("heisenberg group law") {
  const auto& h = NilCatalogEntry::heisenberg();
  NilPoint id = nil_identity(h);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    NilPoint x = random_heis(rng);
    NilPoint y = random_heis(rng);
    NilPoint z = random_heis(rng);
    // identity and inverse laws, exact
    CHECK(nil_mul(id, x).coords == x.coords);
    CHECK(nil_mul(x, id).coords == x.coords);
    CHECK(nil_mul(x, nil_inv(x)).coords == id.coords);
    CHECK(nil_mul(nil_inv(x), x).coords == id.coords);
    // associativity, exact
    CHECK(nil_mul(nil_mul(x, y), z).coords == nil_mul(x, nil_mul(y, z)).coords);
  }
  // explicit product formula
  NilPoint p = nil_mul(heis_pt(Rat(1), Rat(2), Rat(3)),
                       heis_pt(Rat(5), Rat(7), Rat(11)));
  CHECK(p.coords[0] == Rat(6));
  CHECK(p.coords[1] == Rat(9));
  CHECK(p.coords[2] == Rat(3 + 11 + 1 * 7));

  CHECK_THROWS_AS(
      nil_mul(nil_identity(h), nil_identity(NilCatalogEntry::torus(3))),
      GroupMismatch);
}

TEST_CASE("canonical representative and lattice") {
  CHECK(nil_in_lattice(heis_pt(Rat(2), Rat(-3), Rat(7))));
  CHECK(!nil_in_lattice(heis_pt(Rat(2), rr(1, 2), Rat(7))));

  Rng rng(9);
  for (int t = 0; t < 60; ++t) {
    NilPoint x = random_heis(rng);
    NilPoint gam = heis_pt(Rat(rng.next_i64(-5, 5)), Rat(rng.next_i64(-5, 5)),
                           Rat(rng.next_i64(-5, 5)));
    NilPoint xc = nil_canonical(x);
    // canonical representative is coset-invariant, exactly
    CHECK(nil_canonical(nil_mul(x, gam)).coords == xc.coords);
    // and lies in [0,1)^3
    for (const auto& c : xc.coords) {
      CHECK(c >= Rat(0));
      CHECK(c < Rat(1));
    }
    // x and its representative differ by a lattice element
    NilPoint diff = nil_mul(nil_inv(x), xc);
    CHECK(nil_in_lattice(diff));
  }
}

TEST_CASE("nil metric basics") {
  const auto& t1 = NilCatalogEntry::torus(1);
  NilPoint a{&t1, {rr(1, 10)}};
  NilPoint b{&t1, {rr(9, 10)}};
  CHECK(nil_metric(a, b) == doctest::Approx(0.2));
  CHECK(nil_metric(a, a) == 0.0);

  Rng rng(123);
  for (int t = 0; t < 60; ++t) {
    NilPoint x = random_heis(rng);
    NilPoint y = random_heis(rng);
    NilPoint gam = heis_pt(Rat(rng.next_i64(-4, 4)), Rat(rng.next_i64(-4, 4)),
                           Rat(rng.next_i64(-4, 4)));
    double d = nil_metric(x, y);
    CHECK(d >= 0.0);
    CHECK(nil_metric(x, x) == 0.0);
    // symmetric by construction
    CHECK(nil_metric(y, x) == doctest::Approx(d).epsilon(1e-14));
    // right lattice invariance, exact (same canonical representatives)
    CHECK(nil_metric(nil_mul(x, gam), nil_mul(y, gam)) ==
          doctest::Approx(d).epsilon(1e-14));
    CHECK(nil_metric(nil_mul(x, gam), y) == doctest::Approx(d).epsilon(1e-14));
  }
  // triangle inequality with a recorded constant <= 2 on random triples
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    NilPoint x = random_heis(rng), y = random_heis(rng), z = random_heis(rng);
    double xz = nil_metric(x, z);
    double sum = nil_metric(x, y) + nil_metric(y, z);
    if (sum > 1e-12) worst = std::max(worst, xz / sum);
  }
  CHECK(worst <= 2.0);
  MESSAGE("triangle constant observed: ", worst);
}

TEST_CASE("sequence algebra") {
  const auto& h = NilCatalogEntry::heisenberg();
  Rng rng(77);
  auto random_seq = [&]() {
    std::vector<BinomialPoly> c(3);
    c[0] = BinomialPoly({Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7)),
                         Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7))});
    c[1] = BinomialPoly({Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7)),
                         Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7))});
    c[2] = BinomialPoly({Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7)),
                         Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7)),
                         Rat(rng.next_i64(-5, 5), rng.next_i64(1, 7))});
    return make_seq(h, c);
  };
  for (int t = 0; t < 25; ++t) {
    NilPolySeq a = random_seq(), b = random_seq();
    NilPolySeq ab = seq_mul(a, b);
    NilPolySeq ainv = seq_inv(a);
    for (i64 n = -3; n <= 6; ++n) {
      CHECK(nil_mul(seq_eval(a, n), seq_eval(b, n)).coords ==
            seq_eval(ab, n).coords);
      CHECK(nil_inv(seq_eval(a, n)).coords == seq_eval(ainv, n).coords);
    }
    i64 st = rng.next_i64(1, 4), off = rng.next_i64(-3, 3);
    NilPolySeq reb = seq_rebase(a, st, off);
    for (i64 n = 0; n <= 5; ++n)
      CHECK(seq_eval(reb, n).coords == seq_eval(a, st * n + off).coords);
  }
  // degree validation: horizontal coordinate of degree 2 is rejected
  std::vector<BinomialPoly> bad(3);
  bad[0] = BinomialPoly({Rat(0), Rat(0), rr(1, 2)});
  CHECK_THROWS_AS(make_seq(h, bad), ConfigInvalid);
}

TEST_CASE("project_mod_level") {
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), rr(1, 3)});
  c[1] = BinomialPoly({Rat(0), rr(1, 5)});
  c[2] = BinomialPoly({Rat(0), Rat(0), rr(1, 7)});
  NilPolySeq g = make_seq(h, c);
  auto horiz = project_mod_level(g, 1);
  REQUIRE(horiz.size() == 2);
  CHECK(horiz[0] == c[0]);
  CHECK(horiz[1] == c[1]);
  auto all = project_mod_level(g, 2);
  CHECK(all.size() == 3);

  const auto& t2 = NilCatalogEntry::torus(2);
  NilPolySeq id = seq_identity(t2);
  auto zs = project_mod_level(id, 1);
  CHECK(zs.size() == 2);
  for (const auto& p : zs) CHECK(p.is_zero());
}

TEST_CASE("reduce_to_subgroup trivial and lattice-valued cases") {
  const auto& h = NilCatalogEntry::heisenberg();
  Progression prog{0, 1, 20, 20};

  // identity sequence reduces trivially
  NilPolySeq id = seq_identity(h);
  std::vector<SplitResult> splits(2);
  auto r = reduce_to_subgroup(id, splits, prog, 1);
  CHECK(seq_is_identity(r.eps));
  CHECK(seq_is_identity(r.gam));
  CHECK(seq_is_identity(r.g_prime));

  // wholly lattice-valued: g = (alpha*C(n,1), 0, 0) with integer alpha
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), Rat(3)});
  NilPolySeq g = make_seq(h, c);
  NilPolySeq greb = seq_rebase(g, prog.step, prog.start);
  std::vector<SplitResult> sp;
  sp.push_back(split_small_int(greb.coords[0], prog.length, 1e-9));
  sp.push_back(split_small_int(greb.coords[1], prog.length, 1e-9));
  auto r2 = reduce_to_subgroup(g, sp, prog, 1);
  CHECK(seq_is_identity(r2.eps));
  CHECK(seq_is_identity(r2.g_prime));
  for (i64 n = 1; n <= prog.length; ++n)
    CHECK(nil_in_lattice(seq_eval(r2.gam, n)));
}

TEST_CASE("reduce_to_subgroup: the worked rational example") {
  // g = ((1/2) C(n,1), (1/3) C(n,1), 0) on a progression where both horizontal
  // phases are constant mod 1 (step 6 kills both denominators).
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), rr(1, 2)});
  c[1] = BinomialPoly({Rat(0), rr(1, 3)});
  NilPolySeq g = make_seq(h, c);
  Progression prog{2, 6, 15, 100};  // {8, 14, ..., 92}

  NilPolySeq greb = seq_rebase(g, prog.step, prog.start);
  std::vector<SplitResult> sp;
  sp.push_back(split_small_int(greb.coords[0], prog.length, 1e-9));
  sp.push_back(split_small_int(greb.coords[1], prog.length, 1e-9));
  auto r = reduce_to_subgroup(g, sp, prog, 1);

  // exact factorization eps * g' * gam = g(rebased) as polynomial identity
  NilPolySeq recombined = seq_mul(seq_mul(r.eps, r.g_prime), r.gam);
  for (int j = 0; j < 3; ++j) CHECK(recombined.coords[j] == greb.coords[j]);
  // g' lives in the center: horizontal coordinates identically zero
  CHECK(r.g_prime.coords[0].is_zero());
  CHECK(r.g_prime.coords[1].is_zero());
  // vertical coordinate is a genuine degree-2 polynomial
  CHECK(r.g_prime.coords[2].effective_degree() == 2);
  // gamma stays in the lattice at every point
  for (i64 n = 1; n <= prog.length; ++n)
    CHECK(nil_in_lattice(seq_eval(r.gam, n)));
  // pointwise check of the factorization on the progression
  for (i64 n = 1; n <= prog.length; ++n) {
    NilPoint lhs = nil_mul(nil_mul(seq_eval(r.eps, n), seq_eval(r.g_prime, n)),
                           seq_eval(r.gam, n));
    CHECK(lhs.coords == seq_eval(g, prog.element(n)).coords);
  }
}

TEST_CASE("decompose_nil: torus rational phase") {
  const auto& t1 = NilCatalogEntry::torus(1);
  NilPolySeq g = make_seq(t1, {BinomialPoly({Rat(0), rr(1, 7)})});
  auto res = decompose_nil(std::vector<NilPolySeq>{g}, 70);
  CHECK(is_exact_partition(res.dec.parts, 70));
  CHECK(res.dec.measured_diameter[0] == 0.0);
  for (const auto& p : res.dec.parts) CHECK(p.step % 7 == 0);

  // abelian consistency: identical to decompose_interval on the same data
  std::vector<BinomialPoly> polys{BinomialPoly({Rat(0), rr(1, 7)})};
  auto flat = decompose_interval(polys, 70);
  REQUIRE(flat.parts.size() == res.dec.parts.size());
  for (size_t i = 0; i < flat.parts.size(); ++i) {
    CHECK(flat.parts[i].start == res.dec.parts[i].start);
    CHECK(flat.parts[i].step == res.dec.parts[i].step);
    CHECK(flat.parts[i].length == res.dec.parts[i].length);
  }
}

TEST_CASE("decompose_nil: identity sequences give one part") {
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<NilPolySeq> seqs{seq_identity(h),
                               seq_identity(NilCatalogEntry::torus(2))};
  auto res = decompose_nil(seqs, 500);
  CHECK(res.dec.parts.size() == 1);
  CHECK(res.dec.parts[0].length == 500);
  CHECK(res.dec.measured_diameter[0] == 0.0);
  CHECK(res.dec.measured_diameter[1] == 0.0);
}

TEST_CASE("decompose_nil: heisenberg with rational horizontals") {
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), rr(1, 2)});
  c[1] = BinomialPoly({Rat(0), rr(1, 3)});
  NilPolySeq g = make_seq(h, c);
  auto res = decompose_nil(std::vector<NilPolySeq>{g}, 2000);
  CHECK(is_exact_partition(res.dec.parts, 2000));
  CHECK(res.dec.measured_diameter[0] <= res.dec.certified_diameter[0]);
  CHECK(res.passes >= 2);
  CHECK(!res.reductions.empty());

  // every recorded reduction satisfies the exact factorization identity
  for (const auto& step : res.reductions) {
    NilPolySeq reb =
        seq_rebase(step.parent, step.rebase_step, step.rebase_start);
    NilPolySeq recombined = seq_mul(seq_mul(step.eps, step.g_prime), step.gam);
    for (size_t j = 0; j < reb.coords.size(); ++j)
      CHECK(recombined.coords[j] == reb.coords[j]);
    for (const auto& p : step.gam.coords) CHECK(p.has_integer_coeffs());
    int hdim = step.parent.group->horizontal_dim(step.pass);
    for (int j = 0; j < hdim; ++j) CHECK(step.g_prime.coords[size_t(j)].is_zero());
  }

  // independent re-measurement of the certified diameters
  double measured = 0.0;
  for (const auto& part : res.dec.parts) {
    for (i64 i = 1; i <= part.length; ++i)
      for (i64 j = i + 1; j <= std::min(part.length, i + 40); ++j)
        measured = std::max(
            measured, nil_metric(seq_eval(g, part.element(i)),
                                 seq_eval(g, part.element(j))));
  }
  CHECK(measured <= res.dec.certified_diameter[0] + 1e-9);
}

TEST_CASE("decompose_nil: dyadic irrational horizontal at moderate N") {
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), rr(1, 2)});
  c[1] = BinomialPoly({Rat(0), Rat::from_double_exact(std::sqrt(2.0) - 1)});
  NilPolySeq g = make_seq(h, c);
  auto res = decompose_nil(std::vector<NilPolySeq>{g}, 1000);
  CHECK(is_exact_partition(res.dec.parts, 1000));
  CHECK(res.dec.measured_diameter[0] <= res.dec.certified_diameter[0]);
  CHECK(res.dec.certified_diameter[0] < 0.75);
  CHECK(res.dec.min_length >= 1);
}

TEST_CASE("decompose_nil: dyadic horizontal at full scale") {
  const auto& h = NilCatalogEntry::heisenberg();
  std::vector<BinomialPoly> c(3);
  c[0] = BinomialPoly({Rat(0), rr(1, 2)});
  c[1] = BinomialPoly({Rat(0), Rat::from_double_exact(0.41421356237309515)});
  NilPolySeq g = make_seq(h, c);
  auto res = decompose_nil(std::vector<NilPolySeq>{g}, 10000);
  CHECK(is_exact_partition(res.dec.parts, 10000));
  CHECK(res.dec.measured_diameter[0] <= res.dec.certified_diameter[0]);
  CHECK(res.singleton_fallbacks == 0);
  CHECK(res.reductions.size() > 100);
  // every reduction still satisfies the exact identity at this scale
  for (size_t i = 0; i < res.reductions.size(); i += 37) {
    const auto& step = res.reductions[i];
    NilPolySeq reb = seq_rebase(step.parent, step.rebase_step, step.rebase_start);
    NilPolySeq recombined = seq_mul(seq_mul(step.eps, step.g_prime), step.gam);
    for (size_t j = 0; j < reb.coords.size(); ++j)
      CHECK(recombined.coords[j] == reb.coords[j]);
  }
}
