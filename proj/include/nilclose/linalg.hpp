#pragma once

#include <optional>
#include <vector>

#include "nilclose/scalar.hpp"

namespace nilclose {

using ScalarVec = std::vector<Scalar>;
using ScalarMat = std::vector<ScalarVec>;  // list of rows

ScalarVec zero_vec(const FieldPtr& f, int n);
ScalarVec add(const ScalarVec& a, const ScalarVec& b);
ScalarVec sub(const ScalarVec& a, const ScalarVec& b);
ScalarVec scale(const ScalarVec& a, const Scalar& c);
bool is_zero(const ScalarVec& v);

// Reduced row echelon form with zero rows dropped.  Pivot columns appear in
// increasing coordinate order, pivots are 1 and alone in their column, so two
// subspaces are equal iff their forms are identical.
ScalarMat rref(ScalarMat m);

// Linear subspace of F^ambient in canonical (rref) form.
struct Subspace {
  FieldPtr field;
  int ambient = 0;
  ScalarMat rows;

  static Subspace zero(const FieldPtr& f, int ambient);
  static Subspace full(const FieldPtr& f, int ambient);
  static Subspace span(const FieldPtr& f, int ambient, ScalarMat vectors);

  int rank() const { return static_cast<int>(rows.size()); }
  bool contains(const ScalarVec& v) const;
  bool contains(const Subspace& other) const;
  // v minus its projection onto the pivot coordinates; zero iff contains(v).
  ScalarVec reduce(const ScalarVec& v) const;
  // All basis entries lie in Q.
  bool has_rational_entries() const;

  bool operator==(const Subspace& o) const;
  bool operator!=(const Subspace& o) const { return !(*this == o); }
};

// Solution of A x = b, if any (empty optional when inconsistent).
std::optional<ScalarVec> solve(const ScalarMat& A, const ScalarVec& b,
                               const FieldPtr& f);

// {v : M v = 0} for M given by rows of length ncols.
Subspace kernel(const ScalarMat& M, const FieldPtr& f, int ncols);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

// Decomposition v = sum_j theta^j v_j with v_j in Q^m; zero components are
// dropped.  Each returned pair is (power j, rational vector).
std::vector<std::pair<int, std::vector<Rational>>> rational_components(
    const ScalarVec& v);

// Q-span of all rational components of the subspace's basis vectors, returned
// as a subspace of the same ambient space (entries rational).  Contains the
// input.
Subspace rational_component_span(const Subspace& s);

// {m in Q^ambient : <m, v_j> = 0 for every rational component v_j of every
// input vector}.  Entries of the result are rational.
Subspace integer_kernel(const FieldPtr& f, const std::vector<ScalarVec>& vectors,
                        int ambient);

// Primitive integer vectors spanning the same space as a rational-entry
// subspace: denominators cleared, content divided out, first nonzero positive.
std::vector<std::vector<Integer>> integer_basis(const Subspace& s);

}  // namespace nilclose
