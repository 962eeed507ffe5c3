#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "nilclose/equi.hpp"
#include "nilclose/errors.hpp"

using namespace nilclose;
using namespace testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Exact average of e^{2 pi i a t} over [0, T].
std::complex<double> linear_average(double a, double T) {
  if (a == 0) return {1, 0};
  std::complex<double> i2pa(0, 2 * kPi * a);
  return (std::exp(i2pa * T) - 1.0) / (i2pa * T);
}

ScalarVec vec2(const FieldPtr& f, const Scalar& a, const Scalar& b) {
  return {a, b};
}

}  // namespace

TEST_CASE("numeric curves validate their variables") {
  auto f = sqrt2_field();
  CHECK_THROWS_AS(NumericCurve::parse(f, {"t", "s"}), MathError);
  CHECK_THROWS_AS(NumericCurve::parse(f, {"x1"}), MathError);
  NumericCurve ok = NumericCurve::parse(f, {"t", "theta*t^2 - ln1p(t)"});
  CHECK(ok.dim() == 2);
}

TEST_CASE("curve derivatives agree with finite differences") {
  auto f = sqrt2_field();
  NumericCurve sigma =
      NumericCurve::parse(f, {"t^3 - 2*t", "ln1p(t)", "theta*t^2 + 1/2"});
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    double t = u(rng);
    double h = 1e-5 * std::max(1.0, t);
    std::vector<double> lo = sigma.eval(t - h), hi = sigma.eval(t + h);
    std::vector<double> d = sigma.derivative(t);
    for (int i = 0; i < sigma.dim(); ++i) {
      double fd = (hi[i] - lo[i]) / (2 * h);
      double scale = std::max(1.0, std::abs(d[i]));
      CHECK(std::abs(d[i] - fd) / scale < 1e-6);
    }
  }
}

TEST_CASE("weyl sum of a vanishing phase is one") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "t"});
  std::complex<double> w = weyl_sum(sigma, {1, -1}, 500.0);
  CHECK(std::abs(w - 1.0) < 1e-9);
}

TEST_CASE("weyl sum rejects degenerate input") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t"});
  CHECK_THROWS_AS(weyl_sum(sigma, {0}, 10.0), MathError);
  CHECK_THROWS_AS(weyl_sum(sigma, {1, 2}, 10.0), MathError);
  CHECK_THROWS_AS(weyl_sum(sigma, {1}, 0.0), MathError);
}

TEST_CASE("weyl sum matches the closed form on the irrational line") {
  auto f = sqrt2_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "theta*t"});
  double a = 1 + std::sqrt(2.0);
  std::complex<double> w = weyl_sum(sigma, {1, 1}, 1000.0);
  CHECK(std::abs(w - linear_average(a, 1000.0)) < 2e-6);
  CHECK(std::abs(w) <= 1 / (kPi * a * 1000.0) + 1e-6);
}

TEST_CASE("weyl sums on random rational lines stay under the closed form") {
  auto f = rational_field();
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long> mi(-3, 3);
  std::uniform_int_distribution<long> num(-8, 8);
  std::uniform_int_distribution<long> den(1, 5);
  int done = 0;
  while (done < 20) {
    Rational b1(num(rng), den(rng)), b2(num(rng), den(rng));
    b1.canonicalize();
    b2.canonicalize();
    std::vector<long> m{mi(rng), mi(rng)};
    double a = m[0] * to_double(b1) + m[1] * to_double(b2);
    if ((m[0] == 0 && m[1] == 0) || std::abs(a) < 1e-3) continue;
    NumericCurve sigma = NumericCurve::parse(
        f, {"(" + rational_str(b1) + ")*t", "(" + rational_str(b2) + ")*t"});
    double T = 100.0;
    std::complex<double> w = weyl_sum(sigma, m, T);
    CHECK(std::abs(w) <= std::abs(linear_average(a, T)) + 1e-6);
    CHECK(std::abs(w) <= 1 + 1e-6);
    ++done;
  }
}

TEST_CASE("negative rational coefficients need the sign outside the literal") {
  // The grammar has no signed literals, so curve text uses leading minus.
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"-1/2*t"});
  std::complex<double> w = weyl_sum(sigma, {2}, 100.0);
  CHECK(std::abs(w - linear_average(-1.0, 100.0)) < 2e-6);
}

TEST_CASE("weyl sum of the logarithmic curve approaches its limit modulus") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "ln1p(t)"});
  double T = 1e6;
  // Antiderivative of e^{2 pi i ln(1+t)} is (1+t)^{1+2 pi i}/(1+2 pi i).
  std::complex<double> one_p_2pi(1, 2 * kPi);
  std::complex<double> exact =
      ((1.0 + T) * std::polar(1.0, 2 * kPi * std::log1p(T)) - 1.0) /
      (one_p_2pi * T);
  std::complex<double> w = weyl_sum(sigma, {0, 1}, T);
  CHECK(std::abs(w - exact) < 5e-6);
  CHECK(std::abs(w) == doctest::Approx(0.157176).epsilon(0.07));
  CHECK(std::abs(w) > 0.147);
  CHECK(std::abs(w) < 0.167);
}

TEST_CASE("weyl sum depends on the curve only through the dotted phase") {
  auto f = sqrt2_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "theta*t"});
  NumericCurve dotted = NumericCurve::parse(f, {"2*t - theta*t"});
  std::complex<double> a = weyl_sum(sigma, {2, -1}, 400.0);
  std::complex<double> b = weyl_sum(dotted, {1}, 400.0);
  CHECK(std::abs(a - b) < 2e-6);

  NumericCurve logcurve = NumericCurve::parse(f, {"t", "ln1p(t)"});
  NumericCurve logdot = NumericCurve::parse(f, {"3*t + ln1p(t)"});
  std::complex<double> c = weyl_sum(logcurve, {3, 1}, 200.0);
  std::complex<double> d = weyl_sum(logdot, {1}, 200.0);
  CHECK(std::abs(c - d) < 2e-6);
}

TEST_CASE("quadrature reports the reached error when the budget runs out") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t^4"});
  try {
    weyl_sum(sigma, {1}, 1e6);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.achieved_error > 1e-6);
    CHECK(e.achieved_error <= 1.0 + 1e-9);
  }
}

TEST_CASE("polynomial cud verdict is exact") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);

  MonomialCurve irr = MonomialCurve::make(
      f, 2, {{Rational(1), vec2(f, q(f, 1), th)}});
  CudVerdict v1 = cud_verdict_polynomial(irr);
  CHECK(v1.cud);
  CHECK(v1.dense);
  CHECK(v1.witnesses.empty());

  MonomialCurve rat = MonomialCurve::make(
      f, 2, {{Rational(1), vec2(f, q(f, 1), q(f, 2))}});
  CudVerdict v2 = cud_verdict_polynomial(rat);
  CHECK(!v2.cud);
  CHECK(!v2.dense);
  REQUIRE(v2.witnesses.size() == 1);
  CHECK(v2.witnesses[0] == std::vector<Integer>{Integer(2), Integer(-1)});

  MonomialCurve parabola = MonomialCurve::make(
      f, 2,
      {{Rational(1), vec2(f, q(f, 1), q(f, 0))},
       {Rational(2), vec2(f, q(f, 0), q(f, 1))}});
  CHECK(cud_verdict_polynomial(parabola).cud);

  // The exact verdict and the torus closure agree on density.
  for (const MonomialCurve& s : {irr, rat, parabola})
    CHECK(cud_verdict_polynomial(s).dense == torus_curve_closure(s).dense);
}

TEST_CASE("numeric report on the irrational line is cud-consistent") {
  auto f = sqrt2_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "theta*t"});
  std::vector<std::vector<long>> ms{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  WeylReport rep = cud_numeric(sigma, ms, {100.0, 1000.0});
  CHECK(rep.cud_consistent);
  CHECK(rep.verdict == "cud-consistent");
  CHECK(rep.rows.size() == 8);
  for (const WeylRow& r : rep.rows) {
    CHECK(r.ok);
    CHECK(r.abs_w <= 1 + 1e-6);
  }
  // The probe t * <m, sigma'> diverges for every frequency here.
  double largest = 0;
  for (const ProbeRow& p : rep.probes)
    if (p.t == 1e6) largest = std::max(largest, std::abs(p.value));
  CHECK(largest > 1e5);
}

TEST_CASE("numeric report flags the constant curve") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"1/2"});
  WeylReport rep = cud_numeric(sigma, {{1}}, {10.0, 100.0});
  CHECK(!rep.cud_consistent);
  for (const WeylRow& r : rep.rows)
    CHECK(r.abs_w == doctest::Approx(1.0).epsilon(1e-9));
  for (const ProbeRow& p : rep.probes) CHECK(p.value == 0.0);
}

TEST_CASE("numeric report reproduces the dense but non-cud logarithmic curve") {
  auto f = rational_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "ln1p(t)"});
  WeylReport rep = cud_numeric(sigma, {{0, 1}}, {1e4, 1e6});
  CHECK(!rep.cud_consistent);
  CHECK(rep.verdict == "not-cud-consistent");
  for (const WeylRow& r : rep.rows) {
    REQUIRE(r.ok);
    CHECK(r.abs_w > 0.1);
  }
  // Here the boundedness probe stays below 1: t * (d/dt) ln(1+t) <= 1.
  for (const ProbeRow& p : rep.probes) CHECK(std::abs(p.value) <= 1.0 + 1e-12);
}

TEST_CASE("weyl report serializes to csv") {
  auto f = sqrt2_field();
  NumericCurve sigma = NumericCurve::parse(f, {"t", "theta*t"});
  WeylReport rep = cud_numeric(sigma, {{1, 1}}, {100.0});
  std::string csv = weyl_report_csv(rep);
  CHECK(csv.rfind("m,T,re_w,im_w,abs_w\n", 0) == 0);
  CHECK(csv.find("1;1,100,") != std::string::npos);
}
