#pragma once

#include "nilclose/groupspec.hpp"

namespace nilclose {

// Lie subalgebra of a group's algebra, in canonical subspace form.
struct Subalgebra {
  GroupSpec group;
  Subspace space;

  // Validates containment in the group algebra and bracket closure.
  static Subalgebra make(const GroupSpec& g, ScalarMat basis);
  static Subalgebra from_subspace(const GroupSpec& g, Subspace s);

  int dim() const { return space.rank(); }
  std::vector<NilMatrix> basis_matrices() const;
  bool operator==(const Subalgebra& o) const { return space == o.space; }
};

// Smallest bracket-closed subspace containing v.
Subalgebra bracket_closure(const GroupSpec& g, const Subspace& v);

// Smallest bracket-closed subspace with an all-rational basis containing h:
// alternately replace the space by the Q-span of the rational components of
// its basis and bracket close, until stable.  Throws MathError if the result
// escapes the group algebra (the group itself is not rational).
Subalgebra rational_closure(const Subalgebra& h);

// {x in g : [x, h] in h}; a subalgebra containing h.
Subalgebra normalizer(const Subalgebra& h);

// Smallest ideal of the group algebra containing v.
Subalgebra normal_closure(const GroupSpec& g, const Subspace& v);

// Descending: C_1 = g, C_{k+1} = [g, C_k], down to zero (final zero included).
// Ascending: Z_0 = 0, Z_{k+1} = {x : [x, g] in Z_k}, up to g (both ends
// included).
struct CentralSeries {
  std::vector<Subspace> descending;
  std::vector<Subspace> ascending;
};
CentralSeries central_series(const GroupSpec& g);

Subalgebra subalgebra_intersect(const Subalgebra& a, const Subalgebra& b);

}  // namespace nilclose
