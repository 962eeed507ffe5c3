#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nilclose/errors.hpp"

using namespace nilclose;
using namespace testutil;

TEST_CASE("field validation rejects bad specs") {
  FieldSpec s;
  s.min_poly = {Integer(-2), Integer(0), Integer(2)};  // not monic
  s.lo = Rational(1);
  s.hi = Rational(2);
  CHECK_THROWS_AS(Field::make(s), MathError);

  s.min_poly = {Integer(1), Integer(2), Integer(1)};  // (x+1)^2
  s.lo = Rational(-2);
  s.hi = Rational(0);
  CHECK_THROWS_AS(Field::make(s), MathError);

  s.min_poly = {Integer(-2), Integer(0), Integer(1)};  // x^2 - 2
  s.lo = Rational(3);
  s.hi = Rational(4);  // no root here
  CHECK_THROWS_AS(Field::make(s), MathError);

  s.lo = Rational(-2);
  s.hi = Rational(2);  // both roots
  CHECK_THROWS_AS(Field::make(s), MathError);

  // Root exactly at an endpoint.
  s.min_poly = {Integer(2), Integer(-3), Integer(1)};  // (x-1)(x-2)
  s.lo = Rational(1);
  s.hi = Rational(3, 2);
  CHECK_THROWS_AS(Field::make(s), MathError);
}

TEST_CASE("degree-1 field is plain Q") {
  auto f = rational_field();
  CHECK(f->is_rational_field());
  Scalar th = Scalar::theta(f);
  CHECK(th == Scalar::zero(f));  // theta is the root of x

  auto a = q(f, 2, 3) + q(f, 1, 7);
  CHECK(a == q(f, 17, 21));
}

TEST_CASE("sqrt2 arithmetic") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);

  CHECK(th * th == q(f, 2));
  // (1+theta)(1-theta) = 1 - theta^2 = -1
  CHECK((q(f, 1) + th) * (q(f, 1) - th) == q(f, -1));
  // 1/theta = theta/2
  CHECK(q(f, 1) / th == th * Rational(1, 2));
  CHECK((q(f, 1) + th) / (q(f, 1) + th) == q(f, 1));
  CHECK_THROWS_AS(q(f, 1) / Scalar::zero(f), ZeroDivisorError);
}

TEST_CASE("comparisons refine the isolating interval") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);

  CHECK(th.cmp(q(f, 3, 2)) < 0);
  CHECK(th.cmp(q(f, 7, 5)) > 0);
  CHECK(th.cmp(th) == 0);
  // 99/70 and 140/99 straddle sqrt(2) very tightly.
  CHECK(th.cmp(q(f, 99, 70)) < 0);
  CHECK(th.cmp(q(f, 140, 99)) > 0);
  CHECK((th * th).cmp(q(f, 2)) == 0);
}

TEST_CASE("floor is exact") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);

  CHECK(th.floor() == 1);
  CHECK((-th).floor() == -2);
  CHECK(q(f, 3, 2).floor() == 1);
  CHECK(q(f, -3, 2).floor() == -2);
  CHECK(q(f, 2).floor() == 2);
  CHECK((th * th * Rational(1, 2)).floor() == 1);  // exactly 1
  CHECK((th * Rational(10)).floor() == 14);        // 14.142...
  CHECK((th + q(f, -1)).floor() == 0);
}

TEST_CASE("float embedding accuracy") {
  auto f = sqrt2_field();
  CHECK(std::abs(f->theta_double() - std::sqrt(2.0)) < 1e-12);
  Scalar x = q(f, 1, 3) + Scalar::theta(f) * Rational(5, 7);
  CHECK(std::abs(x.to_double() - (1.0 / 3 + std::sqrt(2.0) * 5 / 7)) < 1e-12);
}

TEST_CASE("order is consistent with the embedding") {
  auto f = sqrt2_field();
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    Scalar a = random_scalar(f, rng), b = random_scalar(f, rng);
    double da = a.to_double(), db = b.to_double();
    if (std::abs(da - db) > 1e-9) {
      CHECK(a.cmp(b) == (da < db ? -1 : 1));
    }
  }
}

TEST_CASE("reducible min_poly surfaces as zero-divisor errors") {
  auto f = reducible_field();
  Scalar th = Scalar::theta(f);
  Scalar z = th * th - q(f, 2);  // numerically zero, coordinates nonzero

  CHECK_FALSE(z.is_zero());
  CHECK_THROWS_AS(q(f, 1) / z, ZeroDivisorError);
  CHECK_THROWS_AS(z.cmp(Scalar::zero(f)), ZeroDivisorError);
  try {
    q(f, 1) / z;
  } catch (const ZeroDivisorError& e) {
    CHECK(e.factor == "x^2 - 2");
  }

  // theta^2 - 3 is nonzero at this root and still a zero divisor of the ring.
  Scalar w = th * th - q(f, 3);
  CHECK_THROWS_AS(q(f, 1) / w, ZeroDivisorError);
  // But comparison against zero is decidable: theta^2 < 3.
  CHECK(w.cmp(Scalar::zero(f)) < 0);
}

TEST_CASE("scalar strings round-trip basic forms") {
  auto f = sqrt2_field();
  CHECK(Scalar::zero(f).str() == "0");
  CHECK(q(f, -5, 3).str() == "-5/3");
  CHECK((q(f, 1, 2) + Scalar::theta(f) * Rational(3)).str() == "1/2 + 3*theta");
  CHECK((Scalar::theta(f) * Rational(-1)).str() == "-theta");
}
