#include "nilclose/closure.hpp"

#include <algorithm>
#include <cmath>

#include "nilclose/errors.hpp"

namespace nilclose {

Coset make_coset(const UnipotentElement& c, const Subalgebra& h) {
  MalcevBasis B = weak_malcev_through(h);
  return {split_coset(c, B).section, h};
}

Coset smallest_coset_polymap(const PolyMatrix& F, const GroupSpec& G) {
  return smallest_coset_polymap(F, G,
                                ScalarVec(F.nvars(), Scalar::zero(F.field())));
}

Coset smallest_coset_polymap(const PolyMatrix& F, const GroupSpec& G,
                             const ScalarVec& x0) {
  F.require_unipotent_shape();
  if (F.n() != G.n || !F.field()->same_field(*G.field))
    throw MathError("polynomial map does not match the group");

  UnipotentElement c = F.eval_unipotent(x0);
  if (!G.contains_group_element(c))
    throw MathError("polynomial image is not contained in the group");
  PolyMatrix P = symbolic_log_translate(F, c);

  // The constant coefficient of log(c^{-1} F) vanishes only when x0 is the
  // origin; for other base points it belongs with the coefficient span, so
  // the result does not depend on the choice of base point.
  SqMat p0(F.field(), F.n());
  for (int i = 0; i < F.n(); ++i)
    for (int j = i + 1; j < F.n(); ++j) p0.at(i, j) = P.at(i, j).constant_term();
  NilMatrix const_part(p0);
  PolyMatrix P0 = P - PolyMatrix::from_constant(p0, F.nvars());

  ScalarMat rows = coefficient_span(P0).rows;
  rows.push_back(const_part.flatten());
  Subspace span = Subspace::span(F.field(), ambient_dim(F.n()), std::move(rows));
  for (const auto& row : span.rows)
    if (!G.algebra.contains(row))
      throw MathError("polynomial image is not contained in the group");
  return make_coset(c, bracket_closure(G, span));
}

ClosureResult orbit_closure(const Subalgebra& h) {
  UnipotentElement e = UnipotentElement::identity(h.group.field, h.group.n);
  return {make_coset(e, h), make_coset(e, rational_closure(h))};
}

ClosureResult polymap_closure(const PolyMatrix& F, const GroupSpec& G) {
  Coset raw = smallest_coset_polymap(F, G);
  Subalgebra closed = rational_closure(raw.algebra);
  return {raw, make_coset(raw.base, closed)};
}

MonomialCurve MonomialCurve::make(const FieldPtr& f, int dim,
                                  std::vector<MonomialTerm> terms) {
  MonomialCurve sigma;
  sigma.field = f;
  sigma.dim = dim;
  for (auto& t : terms) {
    if (static_cast<int>(t.coefficient.size()) != dim)
      throw MathError("curve coefficient has wrong dimension");
    t.exponent.canonicalize();
    auto same = std::find_if(
        sigma.terms.begin(), sigma.terms.end(),
        [&](const MonomialTerm& u) { return u.exponent == t.exponent; });
    if (same == sigma.terms.end())
      sigma.terms.push_back(std::move(t));
    else
      same->coefficient = add(same->coefficient, t.coefficient);
  }
  sigma.terms.erase(std::remove_if(sigma.terms.begin(), sigma.terms.end(),
                                   [](const MonomialTerm& t) {
                                     return is_zero(t.coefficient);
                                   }),
                    sigma.terms.end());
  std::sort(sigma.terms.begin(), sigma.terms.end(),
            [](const MonomialTerm& a, const MonomialTerm& b) {
              return a.exponent > b.exponent;
            });
  return sigma;
}

std::vector<double> MonomialCurve::eval_double(double t) const {
  std::vector<double> v(dim, 0.0);
  for (const auto& term : terms) {
    double p = std::pow(t, term.exponent.get_d());
    for (int i = 0; i < dim; ++i) v[i] += term.coefficient[i].to_double() * p;
  }
  return v;
}

AffineCoset abelian_nearest_coset(const MonomialCurve& sigma) {
  const FieldPtr& f = sigma.field;
  ScalarVec base = zero_vec(f, sigma.dim);
  ScalarMat positive;
  for (const auto& term : sigma.terms) {
    int s = sgn(term.exponent);
    if (s > 0)
      positive.push_back(term.coefficient);
    else if (s == 0)
      base = term.coefficient;
  }
  Subspace dir = Subspace::span(f, sigma.dim, std::move(positive));
  return {dir.reduce(base), dir};
}

TorusClosure torus_curve_closure(const MonomialCurve& sigma) {
  const FieldPtr& f = sigma.field;
  ScalarVec base = zero_vec(f, sigma.dim);
  std::vector<ScalarVec> nonconstant;
  for (const auto& term : sigma.terms) {
    if (sgn(term.exponent) < 0 || term.exponent.get_den() != 1)
      throw MathError(
          "torus closure needs nonnegative integer exponents; use the "
          "abelian nearest coset for general monomial curves");
    if (sgn(term.exponent) == 0)
      base = term.coefficient;
    else
      nonconstant.push_back(term.coefficient);
  }
  TorusClosure out;
  out.base = std::move(base);
  out.annihilator = integer_kernel(f, nonconstant, sigma.dim);
  out.direction = kernel(out.annihilator.rows, f, sigma.dim);
  out.dense = out.annihilator.rank() == 0;
  return out;
}

}  // namespace nilclose
