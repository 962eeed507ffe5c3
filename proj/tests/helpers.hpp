#pragma once

#include <random>

#include "nilclose/nilmatrix.hpp"

// Shared fixtures for the unit tests.
namespace testutil {

using namespace nilclose;

inline FieldPtr rational_field() {
  FieldSpec s;
  s.min_poly = {Integer(0), Integer(1)};  // x
  s.lo = Rational(-1);
  s.hi = Rational(1);
  return Field::make(s);
}

inline FieldPtr sqrt2_field() {
  FieldSpec s;
  s.min_poly = {Integer(-2), Integer(0), Integer(1)};  // x^2 - 2
  s.lo = Rational(1);
  s.hi = Rational(2);
  return Field::make(s);
}

// (x^2-2)(x^2-3) = x^4 - 5x^2 + 6, isolating the sqrt(2) root.  Squarefree but
// reducible; used to exercise the zero-divisor paths.
inline FieldPtr reducible_field() {
  FieldSpec s;
  s.min_poly = {Integer(6), Integer(0), Integer(-5), Integer(0), Integer(1)};
  s.lo = Rational(13, 10);
  s.hi = Rational(3, 2);
  return Field::make(s);
}

inline Scalar q(const FieldPtr& f, long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return Scalar::from_rational(f, r);
}

inline Rational random_rational(std::mt19937_64& rng, long max_abs = 8,
                                long max_den = 6) {
  std::uniform_int_distribution<long> num(-max_abs, max_abs);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Scalar random_scalar(const FieldPtr& f, std::mt19937_64& rng) {
  std::vector<Rational> c;
  for (int i = 0; i < f->degree(); ++i) c.push_back(random_rational(rng));
  return Scalar::from_coords(f, std::move(c));
}

inline NilMatrix random_nilmatrix(const FieldPtr& f, int n, std::mt19937_64& rng) {
  SqMat m(f, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m.at(i, j) = Scalar::from_rational(f, random_rational(rng));
  return NilMatrix(std::move(m));
}

inline ScalarVec vec(const FieldPtr& f, std::vector<Scalar> xs) { return xs; }

inline NilMatrix E(const FieldPtr& f, int n, int i, int j) {
  return NilMatrix::basis_elem(f, n, i, j);
}

}  // namespace testutil
