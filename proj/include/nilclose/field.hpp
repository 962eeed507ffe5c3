#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nilclose/rational.hpp"

namespace nilclose {

// Dense univariate polynomials over Q, coefficient order c0..cd.  Small degrees
// only; these back the number-field plumbing (reduction, inversion, Sturm).
namespace qpoly {

using Poly = std::vector<Rational>;

void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly derivative(const Poly& p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
// Euclidean division; b must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
// Monic gcd.
Poly gcd(Poly a, Poly b);
Rational eval(const Poly& p, const Rational& x);
// Interval Horner evaluation: encloses {p(x) : x in [lo, hi]}.
std::pair<Rational, Rational> eval_interval(const Poly& p, const Rational& lo,
                                            const Rational& hi);
// Number of distinct real roots of squarefree p in (lo, hi]; p(lo), p(hi) != 0.
int sturm_count(const Poly& p, const Rational& lo, const Rational& hi);
std::string str(const Poly& p);  // for error messages, variable "x"

}  // namespace qpoly

// Number field presentation Q(theta): monic squarefree integer minimal
// polynomial plus an isolating interval picking one real root.  Degree 1 is
// plain Q.  Irreducibility is not verified; zero divisors surface during
// division or comparison and carry the discovered factor.
struct FieldSpec {
  std::vector<Integer> min_poly;  // c0..cD with cD == 1, D >= 1
  Rational lo, hi;                // open isolating interval, lo < hi
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
 public:
  // Validates: monic, D >= 1, squarefree, exactly one root in (lo, hi),
  // nonzero at the endpoints.  Throws MathError otherwise.
  static FieldPtr make(const FieldSpec& spec);

  int degree() const { return deg_; }
  bool is_rational_field() const { return deg_ == 1; }
  const qpoly::Poly& min_poly() const { return p_; }
  const FieldSpec& spec() const { return spec_; }

  // Embedding of theta, accurate to 1e-12.
  double theta_double() const;

  // Isolating interval refined until hi - lo <= eps.  Thread safe; refinement
  // is monotone and shared between callers.
  std::pair<Rational, Rational> theta_interval(const Rational& eps) const;

  // Whether theta is a root of q (a divisor of min_poly); exact, no refinement.
  bool theta_is_root_of(const qpoly::Poly& q) const;

  bool same_field(const Field& other) const;

 private:
  Field() = default;
  void refine_once_locked() const;

  FieldSpec spec_;
  qpoly::Poly p_;
  int deg_ = 0;
  mutable std::mutex mu_;
  mutable Rational lo_, hi_;  // current isolating interval; lo_ == hi_ once exact
  mutable int sign_lo_ = 0;   // sign of p at lo_ (0 only when collapsed)
};

}  // namespace nilclose
