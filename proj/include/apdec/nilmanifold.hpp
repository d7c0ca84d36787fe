#pragma once

#include <span>
#include <string>
#include <vector>

#include "apdec/binomial_poly.hpp"
#include "apdec/progression.hpp"
#include "apdec/schmidt.hpp"

namespace apdec {

enum class GroupKind { torus, heisenberg };

// Catalog entry: an explicit nilpotent group with a degree-k filtration and a
// Mal'cev basis in which the lattice is exactly the integer-coordinate set.
// Torus(d) covers the abelian case; the 3-dimensional Heisenberg group covers
// a genuine non-abelian reduction (realized as unipotent upper-triangular
// matrices; coordinates are the matrix entries).
class NilCatalogEntry {
 public:
  static const NilCatalogEntry& torus(int d, int degree = 1);
  static const NilCatalogEntry& heisenberg();

  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int degree() const { return degree_; }
  double complexity_rating() const { return complexity_; }  // metadata only
  const std::vector<int>& filtration_dims() const { return filt_dims_; }

  // dim G_t; zero beyond the filtration degree.
  int subgroup_dim(int t) const;
  // dim G - dim G_{t+1}: coordinates killed in the quotient G / G_{t+1}.
  int horizontal_dim(int t) const { return dim_ - subgroup_dim(t + 1); }
  // Filtration level of basis element j (1-based).
  int basis_level(int j) const;
  // Largest t with G_t = G; the starting point of the type induction.
  int type() const;

  std::string name() const;
  bool operator==(const NilCatalogEntry& o) const { return this == &o; }

 private:
  NilCatalogEntry(GroupKind kind, int dim, int degree,
                  std::vector<int> filt_dims, double complexity);
  void validate() const;  // nesting + bracket compatibility, once per entry

  GroupKind kind_;
  int dim_;
  int degree_;
  std::vector<int> filt_dims_;  // dim G_1 .. dim G_degree
  double complexity_;
};

struct NilPoint {
  const NilCatalogEntry* group = nullptr;
  std::vector<Rat> coords;
};

NilPoint nil_identity(const NilCatalogEntry& g);
NilPoint nil_mul(const NilPoint& x, const NilPoint& y);
NilPoint nil_inv(const NilPoint& x);
bool nil_in_lattice(const NilPoint& x);
// Unique coset representative with all coordinates in [0,1); exact.
NilPoint nil_canonical(const NilPoint& x);

// Surrogate quotient metric: canonical representatives, then the minimum over
// lattice corrections of the homogeneous norm max_j |z_j|^{1/level(j)},
// symmetrized. Exactly right-lattice-invariant by construction; the triangle
// inequality holds up to a constant that is tested, not assumed.
double nil_metric(const NilPoint& x, const NilPoint& y);

// Polynomial sequence in Mal'cev coordinates; coordinate j has degree at most
// its filtration level.
struct NilPolySeq {
  const NilCatalogEntry* group = nullptr;
  std::vector<BinomialPoly> coords;
};

NilPolySeq make_seq(const NilCatalogEntry& g, std::vector<BinomialPoly> coords);
NilPolySeq seq_identity(const NilCatalogEntry& g);
NilPoint seq_eval(const NilPolySeq& s, i64 n);
NilPolySeq seq_mul(const NilPolySeq& a, const NilPolySeq& b);
NilPolySeq seq_inv(const NilPolySeq& a);
NilPolySeq seq_rebase(const NilPolySeq& s, i64 a, i64 b);
bool seq_is_identity(const NilPolySeq& s);

// Coordinate polynomials killed in the quotient G / G_{t+1}.
std::vector<BinomialPoly> project_mod_level(const NilPolySeq& s, int t);

struct ReduceResult {
  NilPolySeq eps;      // smooth part, exp of the small coefficients
  NilPolySeq gam;      // lattice part, integer-coefficient coordinates
  NilPolySeq g_prime;  // lives in G_{t+1}: first horizontal_dim(t) coords zero
  double eps_smoothness = 0.0;  // realized smoothness norm of the small parts
};

// The reduction trick at pass t on a progression: factor the rebased sequence
// as eps * g_prime * gam with gam lattice-valued and g_prime in the subgroup.
// splits must come from split_small_int applied to the first
// horizontal_dim(t) coordinates of seq_rebase(g, prog.step, prog.start).
ReduceResult reduce_to_subgroup(const NilPolySeq& g,
                                std::span<const SplitResult> splits,
                                const Progression& prog, int t);

struct NilDecomposeConfig {
  DecomposeConfig interval;
  int depth_budget = 16;
};

// One recorded reduction event, kept for exact post-hoc verification.
struct ReduceStep {
  int seq_index = 0;
  int pass = 0;            // the type parameter t
  i64 rebase_step = 1;     // progression map n -> step*n + start (local frame)
  i64 rebase_start = 0;
  i64 prog_length = 0;     // the local frame runs over [1, prog_length]
  NilPolySeq parent;       // sequence before the reduction (local frame)
  NilPolySeq eps, gam, g_prime;
};

struct NilDecomposeResult {
  Decomposition dec;                 // per-sequence diameters
  std::vector<ReduceStep> reductions;
  int passes = 0;
  i64 singleton_fallbacks = 0;  // parts singletonized after a failed split
};

// Full type-induction decomposition: project horizontal coordinates,
// decompose the interval, singletonize short parts, reduce long parts into
// the next filtration level, recurse; certify diameters with nil_metric.
NilDecomposeResult decompose_nil(std::span<const NilPolySeq> seqs, i64 n,
                                 const NilDecomposeConfig& cfg = {});

}  // namespace apdec
