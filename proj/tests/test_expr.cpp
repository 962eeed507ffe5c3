#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nilclose/errors.hpp"
#include "nilclose/expr.hpp"

using namespace nilclose;
using namespace testutil;

TEST_CASE("expression parsing respects precedence") {
  Expr e = parse_expression("1 + 2*t^3");
  REQUIRE(e.kind == Expr::Kind::Sum);
  REQUIRE(e.kids.size() == 2);
  CHECK(e.signs == std::vector<int>{1, 1});
  CHECK(e.kids[0].kind == Expr::Kind::Number);
  CHECK(cmp(e.kids[0].number, Rational(1)) == 0);
  const Expr& prod = e.kids[1];
  REQUIRE(prod.kind == Expr::Kind::Product);
  REQUIRE(prod.kids.size() == 2);
  CHECK(prod.kids[0].kind == Expr::Kind::Number);
  REQUIRE(prod.kids[1].kind == Expr::Kind::Power);
  CHECK(prod.kids[1].exponent == 3);
  CHECK(prod.kids[1].kids[0].kind == Expr::Kind::Var);
  CHECK(prod.kids[1].kids[0].var == "t");
}

TEST_CASE("expression atoms") {
  CHECK(parse_expression("3/2").kind == Expr::Kind::Number);
  CHECK(cmp(parse_expression("3/2").number, Rational(3, 2)) == 0);
  CHECK(cmp(parse_expression("0.25").number, Rational(1, 4)) == 0);
  CHECK(parse_expression("theta").kind == Expr::Kind::Theta);
  CHECK(parse_expression("x12").var == "x12");
  CHECK(parse_expression("s").var == "s");
  CHECK(parse_expression("( t )") == parse_expression("t"));

  Expr l = parse_expression("ln1p(t)");
  CHECK(l.kind == Expr::Kind::Ln1p);
  CHECK(l.var == "t");
}

TEST_CASE("leading minus") {
  Expr e = parse_expression("-t + 1");
  REQUIRE(e.kind == Expr::Kind::Sum);
  CHECK(e.signs == std::vector<int>{-1, 1});

  Expr single = parse_expression("-theta");
  REQUIRE(single.kind == Expr::Kind::Sum);
  CHECK(single.signs == std::vector<int>{-1});
  CHECK(single.kids[0].kind == Expr::Kind::Theta);
}

TEST_CASE("parse errors carry a column") {
  auto col_of = [](const std::string& s) {
    try {
      parse_expression(s);
    } catch (const ParseError& e) {
      return e.column;
    }
    return -1;
  };
  CHECK(col_of("1/0") == 1);
  CHECK(col_of("t + foo") == 5);
  CHECK(col_of("x") == 1);       // bare x is not a variable
  CHECK(col_of("(t") == 3);
  CHECK(col_of("2^-1") == 3);
  CHECK(col_of("2^1/2") == 3);
  CHECK(col_of("t t") == 3);
  CHECK(col_of("2*") == 3);
  CHECK(col_of("ln1p(2)") == 6);
  CHECK(col_of("t $") == 3);
}

TEST_CASE("emitted text reparses to the same tree") {
  const char* corpus[] = {
      "t",
      "3/2",
      "0",
      "theta",
      "-t",
      "1 + 2*t^3 - theta*s",
      "(t + 1)^2",
      "(t + s)*(t - s)",
      "ln1p(t)",
      "2*ln1p(t) + t^2",
      "-(t + 1) + x3",
      "((t))",
      "x1*x2*x3 - 1/6",
      "(1 - t)^4*theta^2",
  };
  for (const char* s : corpus) {
    Expr e = parse_expression(s);
    CHECK(parse_expression(emit_expression(e)) == e);
  }
}

TEST_CASE("expression variables in order of appearance") {
  Expr e = parse_expression("s*t + x2*s + ln1p(t)");
  CHECK(expression_vars(e) ==
        std::vector<std::string>{"s", "t", "x2"});
}

TEST_CASE("conversion to an exact polynomial") {
  auto f = sqrt2_field();
  Expr e = parse_expression("t^2 + theta*t - 1/2");
  Polynomial p = expression_to_polynomial(e, f, {"t"});

  Polynomial t = Polynomial::variable(f, 1, 0);
  Polynomial want = t * t + t.scaled(Scalar::theta(f)) -
                    Polynomial::constant(f, 1, q(f, 1, 2));
  CHECK(p == want);

  Expr two = parse_expression("t*s - (t + s)^2");
  Polynomial p2 = expression_to_polynomial(two, f, {"t", "s"});
  CHECK(p2.eval({q(f, 1), q(f, 2)}) == q(f, -7));
}

TEST_CASE("polynomial conversion rejects what the ring cannot hold") {
  auto f = rational_field();
  CHECK_THROWS_AS(
      expression_to_polynomial(parse_expression("ln1p(t)"), f, {"t"}),
      MathError);
  CHECK_THROWS_AS(expression_to_polynomial(parse_expression("s"), f, {"t"}),
                  MathError);
}

TEST_CASE("floating evaluation") {
  double th = std::sqrt(2.0);
  Expr e = parse_expression("t^2 + 2");
  CHECK(eval_expression(e, th, {"t"}, {3.0}) == doctest::Approx(11.0));
  CHECK(eval_expression(parse_expression("theta"), th, {}, {}) ==
        doctest::Approx(th));
  CHECK(eval_expression(parse_expression("ln1p(t)"), th, {"t"},
                        {std::exp(1.0) - 1}) == doctest::Approx(1.0));
  CHECK(eval_expression(parse_expression("-t + s*t"), th, {"t", "s"},
                        {2.0, 5.0}) == doctest::Approx(8.0));
}

TEST_CASE("symbolic derivatives match finite differences") {
  const char* corpus[] = {
      "t^3",
      "ln1p(t)",
      "t*ln1p(t)",
      "(t + 1)^2*(t - 1/2)",
      "theta*t^2 - 3*t + 1",
      "2*ln1p(t) - t^4",
  };
  double th = std::sqrt(2.0);
  for (const char* s : corpus) {
    Expr e = parse_expression(s);
    Expr d = differentiate(e, "t");
    for (double t0 : {0.3, 1.7, 4.0}) {
      double h = 1e-6;
      double fd = (eval_expression(e, th, {"t"}, {t0 + h}) -
                   eval_expression(e, th, {"t"}, {t0 - h})) /
                  (2 * h);
      double sym = eval_expression(d, th, {"t"}, {t0});
      CHECK(sym == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("derivative structure") {
  Expr d = differentiate(parse_expression("ln1p(t)"), "t");
  CHECK(d.kind == Expr::Kind::Recip);
  CHECK(eval_expression(d, 0.0, {"t"}, {3.0}) == doctest::Approx(0.25));

  Expr zero = differentiate(parse_expression("t^2 + theta"), "s");
  CHECK(zero.kind == Expr::Kind::Number);
  CHECK(sgn(zero.number) == 0);

  // d/dt of t^3 stays inside the grammar and reparses.
  Expr cubic = differentiate(parse_expression("t^3"), "t");
  CHECK(parse_expression(emit_expression(cubic)) == cubic);
}
