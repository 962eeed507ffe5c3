#pragma once

#include "nilclose/nilmatrix.hpp"

namespace nilclose {

// Connected unipotent subgroup of UT(n, R), presented by its Lie algebra as a
// subspace of the strictly-upper-triangular matrices.  The subspace must be
// bracket closed with rational structure constants relative to its canonical
// basis; the lattice is always UT(n, Z) intersected with the group.
struct GroupSpec {
  FieldPtr field;
  int n = 0;
  Subspace algebra;

  static GroupSpec full_ut(const FieldPtr& f, int n);
  // Validates bracket closure and rationality of structure constants.
  static GroupSpec make(const FieldPtr& f, int n, ScalarMat basis);

  int dim() const { return algebra.rank(); }
  bool contains(const NilMatrix& x) const { return algebra.contains(x.flatten()); }
  bool contains_group_element(const UnipotentElement& g) const;
  bool is_full() const { return dim() == ambient_dim(n); }
};

// Coordinates of v relative to the subspace's canonical basis, if v lies in it.
std::optional<ScalarVec> coords_in_span(const Subspace& s, const ScalarVec& v);

}  // namespace nilclose
