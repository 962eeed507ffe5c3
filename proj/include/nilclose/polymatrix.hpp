#pragma once

#include "nilclose/nilmatrix.hpp"
#include "nilclose/poly.hpp"

namespace nilclose {

// Square matrix of polynomials.  Two shapes occur: unipotent shape (constant 1
// diagonal, zero below) for polynomial maps into UT(n), and nilpotent shape
// (zero diagonal and below) for their symbolic logarithms.
class PolyMatrix {
 public:
  PolyMatrix(const FieldPtr& f, int n, int nvars,
             int degree_cap = Polynomial::kDefaultDegreeCap);  // zero matrix
  static PolyMatrix identity(const FieldPtr& f, int n, int nvars,
                             int degree_cap = Polynomial::kDefaultDegreeCap);
  static PolyMatrix from_constant(const SqMat& m, int nvars,
                                  int degree_cap = Polynomial::kDefaultDegreeCap);

  const FieldPtr& field() const { return field_; }
  int n() const { return n_; }
  int nvars() const { return nvars_; }
  Polynomial& at(int i, int j) { return e_[i * n_ + j]; }
  const Polynomial& at(int i, int j) const { return e_[i * n_ + j]; }

  bool is_unipotent_shape() const;
  bool is_nilpotent_shape() const;
  void require_unipotent_shape() const;

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix scaled(const Scalar& c) const;
  bool operator==(const PolyMatrix& o) const;

  // Exact evaluation; the result must be unipotent.
  UnipotentElement eval_unipotent(const ScalarVec& x) const;

 private:
  FieldPtr field_;
  int n_, nvars_;
  std::vector<Polynomial> e_;
};

// log(c^{-1} F(x)) as a polynomial matrix, by the finite series; nilpotent
// shaped.  c must be a constant unipotent element of matching size.
PolyMatrix symbolic_log_translate(const PolyMatrix& F, const UnipotentElement& c);

// exp(p(x) * N) as a polynomial matrix, by the finite series.
PolyMatrix poly_exp(const Polynomial& p, const NilMatrix& N);

// Span of the flattened coefficient matrices of all nonconstant monomials.
// Throws MathError if the constant term is nonzero (callers translate first).
Subspace coefficient_span(const PolyMatrix& P);

// Float-evaluation form: terms flattened to doubles once, then evaluated per
// sample point.  Row-major n*n output.
class FloatPolyMatrix {
 public:
  explicit FloatPolyMatrix(const PolyMatrix& F);
  int n() const { return n_; }
  int nvars() const { return nvars_; }
  // Writes the n*n value into out; throws MathError naming the parameter point
  // if any entry exceeds 1e300 in magnitude.
  void eval(const std::vector<double>& x, std::vector<double>& out) const;

 private:
  struct Term {
    double coeff;
    std::vector<unsigned> exps;
  };
  int n_, nvars_;
  std::vector<std::vector<Term>> entries_;
};

}  // namespace nilclose
