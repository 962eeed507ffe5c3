#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nilclose/errors.hpp"
#include "nilclose/verify.hpp"

using namespace nilclose;
using namespace testutil;

namespace {

// I + c * t^k E_{ij} in one variable.
PolyMatrix elem_poly(const FieldPtr& f, int n, int i, int j, const Scalar& c,
                     unsigned k) {
  PolyMatrix m = PolyMatrix::identity(f, n, 1);
  Polynomial p(f, 1);
  p.add_term({k}, c);
  m.at(i, j) = p;
  return m;
}

// exp(t(E12 + theta E13)); the factors commute, so the series stops early.
PolyMatrix torus_line(const FieldPtr& f) {
  PolyMatrix m = PolyMatrix::identity(f, 3, 1);
  Polynomial t = Polynomial::variable(f, 1, 0);
  m.at(0, 1) = t;
  m.at(0, 2) = t.scaled(Scalar::theta(f));
  return m;
}

double frac(double x) { return x - std::floor(x); }

FloatReducedPoint point3(double a, double b, double c) {
  DMat g = DMat::identity(3);
  g.at(0, 1) = a;
  g.at(0, 2) = b;
  g.at(1, 2) = c;
  return {g, DMat::identity(3)};
}

}  // namespace

TEST_CASE("sample plans are deterministic and stay inside the box") {
  SamplePlan p;
  p.box = {{0.0, 10.0}, {-1.0, 1.0}};
  p.count = 128;
  for (auto s : {SamplePlan::Strategy::Grid, SamplePlan::Strategy::Halton,
                 SamplePlan::Strategy::Random}) {
    p.strategy = s;
    p.seed = 7;
    p.validate();
    for (size_t k = 0; k < p.count; ++k) {
      std::vector<double> x = p.point(k);
      CHECK(x == p.point(k));
      REQUIRE(x.size() == 2);
      CHECK(x[0] >= 0.0);
      CHECK(x[0] <= 10.0);
      CHECK(x[1] >= -1.0);
      CHECK(x[1] <= 1.0);
    }
  }
  p.strategy = SamplePlan::Strategy::Random;
  p.seed = 8;
  CHECK(p.point(0) != [&] { SamplePlan q = p; q.seed = 9; return q.point(0); }());
}

TEST_CASE("sample plans reject degenerate input") {
  SamplePlan p;
  CHECK_THROWS_AS(p.validate(), MathError);  // no box, no count
  p.box = {{0.0, 1.0}};
  CHECK_THROWS_AS(p.validate(), MathError);  // count still zero
  p.count = 10;
  p.validate();
  p.box = {{2.0, 1.0}};
  CHECK_THROWS_AS(p.validate(), MathError);  // lo > hi
}

TEST_CASE("orbit sampling of a constant map repeats one point") {
  auto f = rational_field();
  SqMat c = SqMat::identity(f, 3);
  c.at(0, 1) = q(f, 1, 3);
  c.at(1, 2) = q(f, 7, 2);
  PolyMatrix F = PolyMatrix::from_constant(c, 1);
  SamplePlan plan;
  plan.box = {{0.0, 5.0}};
  plan.count = 5;
  auto pts = sample_orbit(F, plan);
  REQUIRE(pts.size() == 5);
  for (const auto& p : pts) {
    CHECK(p.rep.at(0, 1) == pts[0].rep.at(0, 1));
    CHECK(p.rep.at(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(p.rep.at(1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("orbit sampling of the one-parameter circle wraps the parameter") {
  auto f = rational_field();
  PolyMatrix F = elem_poly(f, 3, 0, 1, Scalar::one(f), 1);
  SamplePlan plan;
  plan.box = {{0.0, 10.0}};
  plan.strategy = SamplePlan::Strategy::Grid;
  plan.count = 1000;
  auto pts = sample_orbit(F, plan);
  for (size_t k = 0; k < pts.size(); ++k) {
    double t = plan.point(k)[0];
    CHECK(pts[k].rep.at(0, 1) == doctest::Approx(frac(t)).epsilon(1e-12));
    CHECK(pts[k].rep.at(0, 2) == 0.0);
    CHECK(pts[k].rep.at(1, 2) == 0.0);
  }
}

TEST_CASE("orbit sampling reports overflow") {
  auto f = rational_field();
  PolyMatrix F = elem_poly(f, 3, 0, 1, Scalar::one(f), 9);
  SamplePlan plan;
  plan.box = {{1e35, 1e36}};
  plan.count = 3;
  CHECK_THROWS_AS(sample_orbit(F, plan), MathError);
}

TEST_CASE("predicted sampling of a point closure repeats the point") {
  auto f = rational_field();
  SqMat c = SqMat::identity(f, 3);
  c.at(0, 2) = q(f, 5, 4);
  PolyMatrix F = PolyMatrix::from_constant(c, 1);
  ClosureResult r = polymap_closure(F, GroupSpec::full_ut(f, 3));
  REQUIRE(r.closed.algebra.space.rank() == 0);
  auto pts = sample_predicted(r, predicted_plan(r, 4, SamplePlan::Strategy::Halton, 0));
  REQUIRE(pts.size() == 4);
  for (const auto& p : pts) {
    CHECK(p.rep.at(0, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(p.rep.at(0, 1) == 0.0);
  }
}

TEST_CASE("predicted sampling of the two-torus stays on it") {
  auto f = sqrt2_field();
  ClosureResult r = polymap_closure(torus_line(f), GroupSpec::full_ut(f, 3));
  REQUIRE(r.closed.algebra.space.rank() == 2);
  auto pts = sample_predicted(
      r, predicted_plan(r, 2000, SamplePlan::Strategy::Halton, 0));
  double spread01 = 0, spread02 = 0;
  for (const auto& p : pts) {
    CHECK(std::abs(p.rep.at(1, 2)) <= 1e-12);
    spread01 = std::max(spread01, p.rep.at(0, 1));
    spread02 = std::max(spread02, p.rep.at(0, 2));
  }
  CHECK(spread01 > 0.9);
  CHECK(spread02 > 0.9);
}

TEST_CASE("identical sample sets verify cleanly") {
  auto f = sqrt2_field();
  // Dense line: the closed algebra is everything.
  PolyMatrix F = PolyMatrix::identity(f, 3, 1);
  Polynomial t = Polynomial::variable(f, 1, 0);
  F.at(0, 1) = t;
  F.at(1, 2) = t.scaled(Scalar::theta(f));
  F.at(0, 2) = (t * t).scaled(Scalar::theta(f) * Rational(1, 2));
  ClosureResult r = polymap_closure(F, GroupSpec::full_ut(f, 3));
  REQUIRE(r.dense_in_group());

  auto pred = sample_predicted(
      r, predicted_plan(r, 4096, SamplePlan::Strategy::Halton, 0));
  VerifyReport rep = hausdorff_check(pred, pred, 0.25, {});
  CHECK(rep.max_orbit_to_predicted == 0.0);
  CHECK(rep.max_predicted_to_orbit == 0.0);
  CHECK(rep.coverage == 1.0);
  CHECK(rep.pass);
}

TEST_CASE("a sparse orbit fails the density direction only") {
  auto f = sqrt2_field();
  PolyMatrix F = PolyMatrix::identity(f, 3, 1);
  Polynomial t = Polynomial::variable(f, 1, 0);
  F.at(0, 1) = t;
  F.at(1, 2) = t.scaled(Scalar::theta(f));
  F.at(0, 2) = (t * t).scaled(Scalar::theta(f) * Rational(1, 2));
  ClosureResult r = polymap_closure(F, GroupSpec::full_ut(f, 3));
  auto pred = sample_predicted(
      r, predicted_plan(r, 5000, SamplePlan::Strategy::Halton, 0));
  std::vector<FloatReducedPoint> sparse(pred.begin(), pred.begin() + 40);
  VerifyReport rep = hausdorff_check(sparse, pred, 0.125, {});
  CHECK(rep.containment_pass);  // the sparse set is a subset
  CHECK(!rep.density_pass);
  CHECK(!rep.pass);
  CHECK(rep.max_predicted_to_orbit > 0.2);
}

TEST_CASE("containment against the predicted coset itself") {
  auto f = sqrt2_field();
  ClosureResult r = polymap_closure(torus_line(f), GroupSpec::full_ut(f, 3));
  SamplePlan plan;
  plan.box = {{0.0, 500.0}};
  plan.strategy = SamplePlan::Strategy::Halton;
  plan.count = 3000;
  auto orbit = sample_orbit(torus_line(f), plan);
  auto pred = sample_predicted(
      r, predicted_plan(r, 1000, SamplePlan::Strategy::Halton, 0));

  VerifyReport rep = hausdorff_check(orbit, pred, 0.125, {}, &r);
  CHECK(rep.max_orbit_to_predicted <= 1e-9);
  CHECK(rep.containment_pass);

  // A point pushed off the sub-torus is caught.
  auto tainted = orbit;
  tainted.push_back(point3(0.3, 0.7, 0.5));
  VerifyReport bad = hausdorff_check(tainted, pred, 0.125, {}, &r);
  CHECK(bad.max_orbit_to_predicted > 0.2);
  CHECK(!bad.containment_pass);
}

TEST_CASE("verification is reproducible bit for bit") {
  auto f = sqrt2_field();
  PolyMatrix F = torus_line(f);
  SamplePlan plan;
  plan.box = {{0.0, 200.0}};
  plan.strategy = SamplePlan::Strategy::Random;
  plan.seed = 424242;
  plan.count = 2000;
  auto a = sample_orbit(F, plan);
  auto b = sample_orbit(F, plan);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].rep.a == b[i].rep.a);

  ClosureResult r = polymap_closure(F, GroupSpec::full_ut(f, 3));
  auto pred = sample_predicted(
      r, predicted_plan(r, 800, SamplePlan::Strategy::Random, 7));
  VerifyReport r1 = hausdorff_check(a, pred, 0.125, {}, &r);
  VerifyReport r2 = hausdorff_check(b, pred, 0.125, {}, &r);
  CHECK(r1.max_orbit_to_predicted == r2.max_orbit_to_predicted);
  CHECK(r1.max_predicted_to_orbit == r2.max_predicted_to_orbit);
  CHECK(r1.coverage == r2.coverage);
}

TEST_CASE("nearest neighbors respect the wrap-around") {
  std::vector<FloatReducedPoint> orbit{point3(0.99, 0.0, 0.0)};
  std::vector<FloatReducedPoint> pred{point3(0.01, 0.0, 0.0)};
  VerifyTolerances tol;
  tol.density = 0.05;
  VerifyReport rep = hausdorff_check(orbit, pred, 0.25, tol);
  CHECK(rep.max_predicted_to_orbit == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(rep.density_pass);
}

TEST_CASE("growing the orbit sample never hurts the density direction") {
  auto f = sqrt2_field();
  PolyMatrix F = torus_line(f);
  ClosureResult r = polymap_closure(F, GroupSpec::full_ut(f, 3));
  auto pred = sample_predicted(
      r, predicted_plan(r, 600, SamplePlan::Strategy::Halton, 0));

  SamplePlan plan;
  plan.box = {{0.0, 300.0}};
  plan.strategy = SamplePlan::Strategy::Halton;
  plan.count = 200;
  auto small_orbit = sample_orbit(F, plan);
  plan.count = 1200;
  auto big_orbit = sample_orbit(F, plan);  // Halton prefixes nest

  double small_max = hausdorff_check(small_orbit, pred, 0.25, {}).max_predicted_to_orbit;
  double big_max = hausdorff_check(big_orbit, pred, 0.25, {}).max_predicted_to_orbit;
  CHECK(big_max <= small_max + 1e-12);

  double cov_small = hausdorff_check(small_orbit, pred, 0.25, {}).coverage;
  double cov_big = hausdorff_check(big_orbit, pred, 0.25, {}).coverage;
  CHECK(cov_big >= cov_small);
}

TEST_CASE("sample csv lists the above-diagonal entries") {
  std::vector<FloatReducedPoint> pts{point3(0.25, 0.5, 0.75)};
  std::string csv = samples_csv(pts, 3);
  CHECK(csv == "x0_1,x0_2,x1_2\n0.25,0.5,0.75\n");
}
