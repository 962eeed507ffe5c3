#pragma once

#include "nilclose/subalgebra.hpp"

namespace nilclose {

// Small dense float matrix, row-major; the fast path for sampling and
// fundamental-domain work.
struct DMat {
  int n = 0;
  std::vector<double> a;

  DMat() = default;
  explicit DMat(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}
  static DMat identity(int dim);

  double& at(int i, int j) { return a[i * n + j]; }
  double at(int i, int j) const { return a[i * n + j]; }
};

DMat dmul(const DMat& x, const DMat& y);
DMat dinv_unipotent(const DMat& u);
DMat dexp_nil(const DMat& x);
DMat dlog_unip(const DMat& u);
DMat to_dmat(const UnipotentElement& g);
DMat to_dmat(const NilMatrix& x);

// Weak Malcev basis of the group algebra passing through a subalgebra: the
// first through_rank vectors span h, every prefix is a subalgebra, and each
// prefix is an ideal of the next.  Built by climbing normalizers, always
// taking the first canonical-basis candidate (in position order) reduced
// against the current prefix.
struct MalcevBasis {
  GroupSpec group;
  std::vector<NilMatrix> xi;
  int through_rank = 0;
  // True when every prefix span is known bracket-closed (guaranteed by
  // weak_malcev_through); lets coordinate extraction skip closure checks.
  bool prefix_closed = false;
};

MalcevBasis weak_malcev_through(const Subalgebra& h);

// Weak Malcev basis of h itself (ambient restricted to h).
std::vector<NilMatrix> weak_malcev_of(const Subalgebra& h);

// Coordinates of the second kind: g = exp(s1 xi1) ... exp(sm xim), exact.
// Throws MathError if log(g) lies outside the group algebra.
ScalarVec second_kind_coords(const UnipotentElement& g, const MalcevBasis& B);
UnipotentElement from_second_kind_coords(const ScalarVec& s, const MalcevBasis& B);

// Fundamental-domain reduction mod UT(n, Z): above-diagonal entries of rep lie
// in [0,1), gamma is integral, and rep * gamma = g exactly.
struct ReducedPoint {
  UnipotentElement rep;
  UnipotentElement gamma;
};
ReducedPoint reduce_mod_lattice(const UnipotentElement& g);

// Float variant; entries within snap_tol of an integer are treated as that
// integer, so rep entries land in [0,1) up to snapping.
struct FloatReducedPoint {
  DMat rep;
  DMat gamma;  // integer valued
};
FloatReducedPoint reduce_mod_lattice_float(const DMat& g, double snap_tol = 1e-9);

// g = section * h_part with h_part in exp(h) and the h-coordinates of section
// zero.  section depends only on the coset g exp(h).
struct CosetSplit {
  UnipotentElement section;
  UnipotentElement h_part;
};
CosetSplit split_coset(const UnipotentElement& g, const MalcevBasis& B);

// Distance between images in UT(n, R)/UT(n, Z): min over integral gamma of the
// Frobenius distance, taken in both argument orders so the result is
// symmetric.  Branch-and-bound over per-position integer windows; exact
// whenever the minimum is below 2.5.
double quotient_distance(const DMat& g1, const DMat& g2);
double quotient_distance(const UnipotentElement& g1, const UnipotentElement& g2);

}  // namespace nilclose
