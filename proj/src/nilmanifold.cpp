#include "apdec/nilmanifold.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "apdec/fracdiam.hpp"

namespace apdec {

// ---------------------------------------------------------------------------
// Catalog

NilCatalogEntry::NilCatalogEntry(GroupKind kind, int dim, int degree,
                                 std::vector<int> filt_dims, double complexity)
    : kind_(kind),
      dim_(dim),
      degree_(degree),
      filt_dims_(std::move(filt_dims)),
      complexity_(complexity) {
  validate();
}

namespace {

// Structure constants as basis indices: bracket_index(i, j) = b means
// [X_i, X_j] = +/- X_b; 0 means the bracket vanishes. Only the filtration
// compatibility is checked here, signs do not matter for that.
int bracket_index(GroupKind kind, int i, int j) {
  if (kind == GroupKind::torus) return 0;
  // Heisenberg: [X_1, X_2] = X_3, everything else commutes.
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) return 3;
  return 0;
}

}  // namespace

void NilCatalogEntry::validate() const {
  if (int(filt_dims_.size()) != degree_)
    throw ConfigInvalid("catalog: filtration length must equal degree");
  if (filt_dims_[0] != dim_)
    throw ConfigInvalid("catalog: G_1 must be the whole group");
  for (size_t i = 1; i < filt_dims_.size(); ++i) {
    if (filt_dims_[i] > filt_dims_[i - 1] || filt_dims_[i] < 0)
      throw ConfigInvalid("catalog: filtration dims must be non-increasing");
  }
  // Bracket compatibility [G_s, G_t] <= G_{s+t} on the basis bracket table.
  for (int i = 1; i <= dim_; ++i) {
    for (int j = 1; j <= dim_; ++j) {
      int b = bracket_index(kind_, i, j);
      if (b == 0) continue;
      if (basis_level(b) < basis_level(i) + basis_level(j))
        throw ConfigInvalid("catalog: bracket violates filtration nesting");
    }
  }
}

int NilCatalogEntry::subgroup_dim(int t) const {
  if (t <= 0) return dim_;
  if (t > degree_) return 0;
  return filt_dims_[size_t(t - 1)];
}

int NilCatalogEntry::basis_level(int j) const {
  int lvl = 1;
  for (int t = 1; t <= degree_; ++t)
    if (j > dim_ - subgroup_dim(t)) lvl = t;
  return lvl;
}

int NilCatalogEntry::type() const {
  int t = 1;
  while (t + 1 <= degree_ && subgroup_dim(t + 1) == dim_) ++t;
  return t;
}

std::string NilCatalogEntry::name() const {
  if (kind_ == GroupKind::torus)
    return "torus:" + std::to_string(dim_) +
           (degree_ > 1 ? "^" + std::to_string(degree_) : "");
  return "heisenberg";
}

const NilCatalogEntry& NilCatalogEntry::torus(int d, int degree) {
  if (d < 1 || d > 8) throw ConfigInvalid("torus: dimension must be in [1,8]");
  if (degree < 1 || degree > 8) throw ConfigInvalid("torus: degree in [1,8]");
  static std::map<std::pair<int, int>, std::unique_ptr<NilCatalogEntry>> cache;
  auto key = std::make_pair(d, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<int> dims(size_t(degree), d);
    it = cache
             .emplace(key, std::unique_ptr<NilCatalogEntry>(new NilCatalogEntry(
                               GroupKind::torus, d, degree, std::move(dims),
                               double(d))))
             .first;
  }
  return *it->second;
}

const NilCatalogEntry& NilCatalogEntry::heisenberg() {
  static const NilCatalogEntry entry(GroupKind::heisenberg, 3, 2, {3, 1}, 2.0);
  return entry;
}

// ---------------------------------------------------------------------------
// Points

namespace {

void require_same_group(const NilPoint& x, const NilPoint& y) {
  if (x.group != y.group)
    throw GroupMismatch("nil point operation across different groups");
}

}  // namespace

NilPoint nil_identity(const NilCatalogEntry& g) {
  return NilPoint{&g, std::vector<Rat>(size_t(g.dim()))};
}

NilPoint nil_mul(const NilPoint& x, const NilPoint& y) {
  require_same_group(x, y);
  NilPoint out{x.group, std::vector<Rat>(x.coords.size())};
  if (x.group->kind() == GroupKind::torus) {
    for (size_t i = 0; i < x.coords.size(); ++i)
      out.coords[i] = x.coords[i] + y.coords[i];
    return out;
  }
  // Heisenberg, matrix-entry coordinates:
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
  out.coords[0] = x.coords[0] + y.coords[0];
  out.coords[1] = x.coords[1] + y.coords[1];
  out.coords[2] = x.coords[2] + y.coords[2] + x.coords[0] * y.coords[1];
  return out;
}

NilPoint nil_inv(const NilPoint& x) {
  NilPoint out{x.group, std::vector<Rat>(x.coords.size())};
  if (x.group->kind() == GroupKind::torus) {
    for (size_t i = 0; i < x.coords.size(); ++i) out.coords[i] = -x.coords[i];
    return out;
  }
  out.coords[0] = -x.coords[0];
  out.coords[1] = -x.coords[1];
  out.coords[2] = x.coords[0] * x.coords[1] - x.coords[2];
  return out;
}

bool nil_in_lattice(const NilPoint& x) {
  for (const auto& c : x.coords)
    if (!c.is_integer()) return false;
  return true;
}

NilPoint nil_canonical(const NilPoint& x) {
  NilPoint out{x.group, std::vector<Rat>(x.coords.size())};
  if (x.group->kind() == GroupKind::torus) {
    for (size_t i = 0; i < x.coords.size(); ++i) out.coords[i] = x.coords[i].frac();
    return out;
  }
  // Right multiplication by gamma = (g1,g2,g3) moves (a,b,c) to
  // (a+g1, b+g2, c+g3+a*g2); reducing a, then b, then the corrected c gives
  // the unique representative in [0,1)^3.
  const Rat& a = x.coords[0];
  const Rat& b = x.coords[1];
  const Rat& c = x.coords[2];
  out.coords[0] = a.frac();
  out.coords[1] = b.frac();
  out.coords[2] = (c - a * Rat(b.floor(), BigInt(1))).frac();
  return out;
}

namespace {

// Min over integer g of the Heisenberg homogeneous norm of (a,b,c)*(g1,g2,g3):
// g1 and g3 are optimal in closed form; the middle coordinate only needs the
// band of width one around -round(b), since the g2 = -round(b) candidate
// already achieves norm <= sqrt(1/2) while |b+g2| > 1 outside the band.
double heis_reduced_norm(double a, double b, double c) {
  double ra = std::fabs(a - std::round(a));
  double g2base = -std::round(b);
  double best = 2.0;
  for (int off = -1; off <= 1; ++off) {
    double g2 = g2base + off;
    double mb = std::fabs(b + g2);
    double cz = c + a * g2;
    double vert = std::fabs(cz - std::round(cz));
    double norm = std::max({ra, mb, std::sqrt(vert)});
    best = std::min(best, norm);
  }
  return best;
}

double heis_pair_metric(const NilPoint& xc, const NilPoint& yc) {
  NilPoint z = nil_mul(nil_inv(xc), yc);
  NilPoint w = nil_mul(nil_inv(yc), xc);
  double d1 = heis_reduced_norm(z.coords[0].to_double(), z.coords[1].to_double(),
                                z.coords[2].to_double());
  double d2 = heis_reduced_norm(w.coords[0].to_double(), w.coords[1].to_double(),
                                w.coords[2].to_double());
  return std::min(d1, d2);
}

}  // namespace

double nil_metric(const NilPoint& x, const NilPoint& y) {
  require_same_group(x, y);
  NilPoint xc = nil_canonical(x);
  NilPoint yc = nil_canonical(y);
  if (x.group->kind() == GroupKind::torus) {
    double best = 0.0;
    for (size_t i = 0; i < xc.coords.size(); ++i) {
      double d = circle_dist(xc.coords[i].to_double(), yc.coords[i].to_double());
      int lvl = x.group->basis_level(int(i) + 1);
      best = std::max(best, lvl == 1 ? d : std::pow(d, 1.0 / double(lvl)));
    }
    return best;
  }
  return heis_pair_metric(xc, yc);
}

// ---------------------------------------------------------------------------
// Polynomial sequences

NilPolySeq make_seq(const NilCatalogEntry& g, std::vector<BinomialPoly> coords) {
  if (int(coords.size()) != g.dim())
    throw ConfigInvalid("make_seq: need one coordinate polynomial per basis element");
  for (int j = 1; j <= g.dim(); ++j) {
    if (coords[size_t(j - 1)].effective_degree() > g.basis_level(j))
      throw ConfigInvalid("make_seq: coordinate degree exceeds filtration level");
  }
  return NilPolySeq{&g, std::move(coords)};
}

NilPolySeq seq_identity(const NilCatalogEntry& g) {
  return NilPolySeq{&g, std::vector<BinomialPoly>(size_t(g.dim()))};
}

NilPoint seq_eval(const NilPolySeq& s, i64 n) {
  NilPoint p{s.group, std::vector<Rat>(s.coords.size())};
  for (size_t i = 0; i < s.coords.size(); ++i) p.coords[i] = s.coords[i].eval(n);
  return p;
}

NilPolySeq seq_mul(const NilPolySeq& a, const NilPolySeq& b) {
  if (a.group != b.group) throw GroupMismatch("seq_mul across groups");
  std::vector<BinomialPoly> c(a.coords.size());
  if (a.group->kind() == GroupKind::torus) {
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  } else {
    c[0] = a.coords[0] + b.coords[0];
    c[1] = a.coords[1] + b.coords[1];
    c[2] = a.coords[2] + b.coords[2] + a.coords[0] * b.coords[1];
  }
  return make_seq(*a.group, std::move(c));
}

NilPolySeq seq_inv(const NilPolySeq& a) {
  std::vector<BinomialPoly> c(a.coords.size());
  if (a.group->kind() == GroupKind::torus) {
    for (size_t i = 0; i < c.size(); ++i) c[i] = -a.coords[i];
  } else {
    c[0] = -a.coords[0];
    c[1] = -a.coords[1];
    c[2] = a.coords[0] * a.coords[1] - a.coords[2];
  }
  return make_seq(*a.group, std::move(c));
}

NilPolySeq seq_rebase(const NilPolySeq& s, i64 a, i64 b) {
  std::vector<BinomialPoly> c(s.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = s.coords[i].rebased(a, b);
  return make_seq(*s.group, std::move(c));
}

bool seq_is_identity(const NilPolySeq& s) {
  for (const auto& p : s.coords)
    if (!p.is_zero()) return false;
  return true;
}

std::vector<BinomialPoly> project_mod_level(const NilPolySeq& s, int t) {
  if (t < 1 || t > s.group->degree())
    throw ConfigInvalid("project_mod_level: t out of range");
  int h = s.group->horizontal_dim(t);
  return std::vector<BinomialPoly>(s.coords.begin(), s.coords.begin() + h);
}

ReduceResult reduce_to_subgroup(const NilPolySeq& g,
                                std::span<const SplitResult> splits,
                                const Progression& prog, int t) {
  const NilCatalogEntry& grp = *g.group;
  const int h = grp.horizontal_dim(t);
  if (int(splits.size()) != h)
    throw ConfigInvalid("reduce_to_subgroup: one split per horizontal coordinate");

  NilPolySeq g_reb = seq_rebase(g, prog.step, prog.start);

  std::vector<BinomialPoly> eps_coords(g.coords.size());
  std::vector<BinomialPoly> gam_coords(g.coords.size());
  for (int j = 0; j < h; ++j) {
    eps_coords[size_t(j)] = splits[size_t(j)].small;
    gam_coords[size_t(j)] = splits[size_t(j)].integral;
  }
  if (grp.kind() == GroupKind::heisenberg && h >= 2) {
    // eps = exp(x X1 + y X2 (+ z X3)) has matrix entries (x, y, z + xy/2);
    // gam = exp(X1)^m1 exp(X2)^m2 (exp(X3)^m3) has entries (m1, m2, m1 m2 + m3).
    BinomialPoly half_prod =
        (splits[0].small * splits[1].small).scaled(Rat(1) / Rat(2));
    eps_coords[2] = eps_coords[2] + half_prod;
    gam_coords[2] = gam_coords[2] + splits[0].integral * splits[1].integral;
  }

  ReduceResult res;
  res.eps = make_seq(grp, std::move(eps_coords));
  res.gam = make_seq(grp, std::move(gam_coords));
  res.g_prime = seq_mul(seq_mul(seq_inv(res.eps), g_reb), seq_inv(res.gam));

  for (int j = 0; j < h; ++j) {
    if (!res.g_prime.coords[size_t(j)].is_zero())
      throw SubgroupViolation(
          "reduce_to_subgroup: horizontal coordinate " + std::to_string(j + 1) +
          " of g' does not vanish");
  }
  for (const auto& p : res.gam.coords) {
    if (!p.has_integer_coeffs())
      throw Error("reduce_to_subgroup: gamma left the lattice (internal)");
  }
  for (const auto& s : splits) {
    res.eps_smoothness = std::max(
        res.eps_smoothness, smoothness_norm(s.small, prog.length).to_double());
  }
  return res;
}

// ---------------------------------------------------------------------------
// decompose_nil

namespace {

struct NilWorker {
  const NilDecomposeConfig& cfg;
  NilDecomposeResult& result;
  i64 ambient;

  void emit(i64 A, i64 B, const Progression& local) {
    result.dec.parts.push_back(Progression{A * local.start + B, A * local.step,
                                           local.length, ambient});
  }

  void emit_singletons(i64 A, i64 B, const Progression& local) {
    for (i64 i = 1; i <= local.length; ++i) {
      i64 x = A * local.element(i) + B;  // absolute element
      result.dec.parts.push_back(Progression{x - 1, 1, 1, ambient});
    }
  }

  void run(const std::vector<NilPolySeq>& seqs, i64 n_local, int t, i64 A,
           i64 B) {
    int maxdeg = 1;
    for (const auto& s : seqs) maxdeg = std::max(maxdeg, s.group->degree());
    if (t > maxdeg + 1)
      throw DepthExceeded("decompose_nil: induction pass beyond degree+1");
    result.passes = std::max(result.passes, t);
    if (n_local < 1) return;
    if (t > maxdeg) {  // type exhausted: trivial decomposition
      emit(A, B, Progression{0, 1, n_local, n_local});
      return;
    }

    // Horizontal coordinate polynomials of this pass, across all sequences.
    std::vector<BinomialPoly> polys;
    std::vector<std::pair<size_t, int>> owner;
    for (size_t si = 0; si < seqs.size(); ++si) {
      int h = seqs[si].group->horizontal_dim(t);
      for (int j = 0; j < h; ++j) {
        polys.push_back(seqs[si].coords[size_t(j)]);
        owner.emplace_back(si, j);
      }
    }
    bool last = true;
    for (const auto& s : seqs)
      if (s.group->subgroup_dim(t + 1) > 0) last = false;

    bool any_nonzero = false;
    for (const auto& p : polys)
      if (!p.is_zero()) any_nonzero = true;
    if (!any_nonzero && !last) {
      run(seqs, n_local, t + 1, A, B);
      return;
    }

    Decomposition dec = decompose_interval(polys, n_local, cfg.depth_budget,
                                           cfg.interval);
    if (last) {
      for (const auto& p : dec.parts) emit(A, B, p);
      return;
    }

    const double threshold =
        std::sqrt(double(n_local) / double(std::max<size_t>(1, dec.parts.size())));
    for (const auto& part : dec.parts) {
      if (double(part.length) <= threshold || part.length < 2) {
        emit_singletons(A, B, part);
        continue;
      }
      size_t reductions_before = result.reductions.size();
      size_t parts_before = result.dec.parts.size();
      try {
        std::vector<NilPolySeq> reduced;
        reduced.reserve(seqs.size());
        size_t poly_idx = 0;
        for (size_t si = 0; si < seqs.size(); ++si) {
          int h = seqs[si].group->horizontal_dim(t);
          NilPolySeq reb = seq_rebase(seqs[si], part.step, part.start);
          std::vector<SplitResult> splits;
          for (int j = 0; j < h; ++j, ++poly_idx) {
            double tol = std::max(dec.certified_diameter[poly_idx],
                                  dec.measured_diameter[poly_idx]);
            splits.push_back(split_small_int(reb.coords[size_t(j)], part.length,
                                             tol * (1 + 1e-9) + 1e-15));
          }
          ReduceResult red = reduce_to_subgroup(seqs[si], splits, part, t);
          result.reductions.push_back(ReduceStep{int(si), t, part.step,
                                                 part.start, part.length,
                                                 seqs[si], red.eps, red.gam,
                                                 red.g_prime});
          reduced.push_back(std::move(red.g_prime));
        }
        run(reduced, part.length, t + 1, A * part.step, A * part.start + B);
      } catch (const BoundViolation&) {
        result.reductions.resize(reductions_before);
        result.dec.parts.resize(parts_before);
        emit_singletons(A, B, part);
        result.singleton_fallbacks += part.length;
      } catch (const DiameterTooLarge&) {
        result.reductions.resize(reductions_before);
        result.dec.parts.resize(parts_before);
        emit_singletons(A, B, part);
        result.singleton_fallbacks += part.length;
      }
    }
  }
};

// Metric diameter of {g(x) Gamma : x in part}, exact canonical coordinates.
double part_metric_diameter(const NilPolySeq& seq, const Progression& part) {
  if (part.length <= 1) return 0.0;
  const NilCatalogEntry& grp = *seq.group;
  std::vector<NilPoint> can;
  can.reserve(size_t(part.length));
  for (i64 i = 1; i <= part.length; ++i)
    can.push_back(nil_canonical(seq_eval(seq, part.element(i))));

  if (grp.kind() == GroupKind::torus) {
    double best = 0.0;
    for (int j = 0; j < grp.dim(); ++j) {
      std::vector<double> vals;
      vals.reserve(can.size());
      for (const auto& p : can) vals.push_back(p.coords[size_t(j)].to_double());
      double d = circle_diameter(std::move(vals));
      int lvl = grp.basis_level(j + 1);
      best = std::max(best, lvl == 1 ? d : std::pow(d, 1.0 / double(lvl)));
    }
    return best;
  }

  // Heisenberg. When the horizontal coordinates are constant across the part
  // (the common case after the interval decomposition), the pair metric
  // collapses to the circle distance of the vertical coordinate, square-rooted.
  bool horizontal_constant = true;
  for (size_t i = 1; i < can.size() && horizontal_constant; ++i) {
    if (can[i].coords[0] != can[0].coords[0] ||
        can[i].coords[1] != can[0].coords[1])
      horizontal_constant = false;
  }
  if (horizontal_constant) {
    std::vector<double> verts;
    verts.reserve(can.size());
    for (const auto& p : can) verts.push_back(p.coords[2].to_double());
    return std::sqrt(circle_diameter(std::move(verts)));
  }
  double best = 0.0;
  for (size_t i = 0; i < can.size(); ++i)
    for (size_t j = i + 1; j < can.size(); ++j)
      best = std::max(best, heis_pair_metric(can[i], can[j]));
  return best;
}

}  // namespace

NilDecomposeResult decompose_nil(std::span<const NilPolySeq> seqs, i64 n,
                                 const NilDecomposeConfig& cfg) {
  if (n < 1) throw ConfigInvalid("decompose_nil: n >= 1 required");
  if (seqs.empty()) throw ConfigInvalid("decompose_nil: need at least one sequence");

  NilDecomposeResult result;
  result.dec.ambient_n = n;
  NilWorker worker{cfg, result, n};
  worker.run(std::vector<NilPolySeq>(seqs.begin(), seqs.end()), n, 1, 1, 0);

  if (!is_exact_partition(result.dec.parts, n))
    throw Error("decompose_nil: internal partition invariant violated");
  result.dec.min_length = n;
  for (const auto& p : result.dec.parts)
    result.dec.min_length = std::min(result.dec.min_length, p.length);

  // Certification is by exhaustive metric measurement over every part.
  for (const auto& seq : seqs) {
    double measured = 0.0;
    for (const auto& part : result.dec.parts)
      measured = std::max(measured, part_metric_diameter(seq, part));
    result.dec.measured_diameter.push_back(measured);
    result.dec.certified_diameter.push_back(measured);
  }
  return result;
}

}  // namespace apdec
