#pragma once

#include "nilclose/malcev.hpp"
#include "nilclose/polymatrix.hpp"

namespace nilclose {

// Left coset base * exp(algebra).  The base is the Malcev-section
// representative of its coset, so equality is componentwise.
struct Coset {
  UnipotentElement base;
  Subalgebra algebra;

  bool operator==(const Coset& o) const {
    return base == o.base && algebra == o.algebra;
  }
  bool operator!=(const Coset& o) const { return !(*this == o); }
};

// Canonicalizes the base via split_coset before storing.
Coset make_coset(const UnipotentElement& c, const Subalgebra& h);

// Closure of an image inside the nilmanifold G/Gamma: the smallest containing
// coset before and after rationalizing its direction algebra.
struct ClosureResult {
  Coset raw;     // c * exp(h), smallest coset containing the image
  Coset closed;  // c * exp(h^Gamma); the topological closure of the projection

  bool dense_in_group() const {
    return closed.algebra.space == closed.algebra.group.algebra;
  }
};

// Smallest coset c * exp(h) of a connected subgroup with F(R^d) inside it:
// c = F(x0), h = bracket closure of the coefficient span of log(c^{-1} F).
// Containment holds as an exact polynomial identity and h is minimal.
Coset smallest_coset_polymap(const PolyMatrix& F, const GroupSpec& G);
Coset smallest_coset_polymap(const PolyMatrix& F, const GroupSpec& G,
                             const ScalarVec& x0);

// Closure of the orbit exp(h) mod the lattice: rationalize h.
ClosureResult orbit_closure(const Subalgebra& h);

// Closure of a polynomial image mod the lattice: smallest coset, then
// rationalize its algebra; the base is re-canonicalized against the larger
// algebra.
ClosureResult polymap_closure(const PolyMatrix& F, const GroupSpec& G);

// Curve sum of c_alpha * t^alpha over distinct rational exponents, t > 0,
// sorted by descending exponent.
struct MonomialTerm {
  Rational exponent;
  ScalarVec coefficient;
};
struct MonomialCurve {
  FieldPtr field;
  int dim = 0;
  std::vector<MonomialTerm> terms;

  // Merges duplicate exponents, drops zero coefficients, sorts descending.
  static MonomialCurve make(const FieldPtr& f, int dim,
                            std::vector<MonomialTerm> terms);
  std::vector<double> eval_double(double t) const;
};

// Affine coset base + direction in R^dim; the base is reduced against the
// direction's pivot coordinates, so equality is componentwise.
struct AffineCoset {
  ScalarVec base;
  Subspace direction;

  bool operator==(const AffineCoset& o) const {
    return base == o.base && direction == o.direction;
  }
  bool operator!=(const AffineCoset& o) const { return !(*this == o); }
};

// The affine coset the curve approaches as t -> infinity: constant term plus
// the span of positive-exponent coefficients; negative exponents vanish.
// Minimal by Q-linear independence of distinct powers of t.
AffineCoset abelian_nearest_coset(const MonomialCurve& sigma);

// Closure data of a polynomial curve image in the torus R^dim / Z^dim.
struct TorusClosure {
  ScalarVec base;       // constant term of the curve
  Subspace annihilator; // rational m with <m, c_alpha> = 0 for all alpha > 0
  Subspace direction;   // L = {x : <m, x> = 0 for every m in the annihilator}
  bool dense = false;   // annihilator is zero
};

// Requires nonnegative integer exponents; the closure of the projected curve
// is the curve itself together with base + direction mod Z^dim.
TorusClosure torus_curve_closure(const MonomialCurve& sigma);

}  // namespace nilclose
