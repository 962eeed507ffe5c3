#include "doctest.h"
#include "helpers.hpp"
#include "nilclose/errors.hpp"
#include "nilclose/subalgebra.hpp"

using namespace nilclose;
using namespace testutil;

namespace {

Subspace span_of(const GroupSpec& g, std::vector<NilMatrix> xs) {
  ScalarMat rows;
  for (const auto& x : xs) rows.push_back(x.flatten());
  return Subspace::span(g.field, ambient_dim(g.n), std::move(rows));
}

}  // namespace

TEST_CASE("group spec validation") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);

  CHECK(GroupSpec::full_ut(f, 3).dim() == 3);

  // Not bracket closed: missing E13.
  CHECK_THROWS_AS(GroupSpec::make(f, 3,
                                  {E(f, 3, 0, 1).flatten(), E(f, 3, 1, 2).flatten()}),
                  MathError);

  // Abelian line with irrational direction is a valid group.
  GroupSpec line = GroupSpec::make(
      f, 3, {(E(f, 3, 0, 1) + E(f, 3, 0, 2).scaled(th)).flatten()});
  CHECK(line.dim() == 1);

  // Bracket closed but with irrational structure constants:
  // [E12, E23 + theta E24] = E13 + theta E14 = r2 + theta r3 canonically.
  ScalarMat basis{E(f, 4, 0, 1).flatten(), E(f, 4, 0, 2).flatten(),
                  E(f, 4, 0, 3).flatten(),
                  (E(f, 4, 1, 2) + E(f, 4, 1, 3).scaled(th)).flatten()};
  CHECK_THROWS_AS(GroupSpec::make(f, 4, basis), MathError);
}

TEST_CASE("bracket closure generates the Heisenberg algebra") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra h = bracket_closure(g, span_of(g, {E(f, 3, 0, 1), E(f, 3, 1, 2)}));
  CHECK(h.space == Subspace::full(f, 3));
}

TEST_CASE("rational closure of span{E12 + theta E23} is everything") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra h = Subalgebra::make(
      g, {(E(f, 3, 0, 1) + E(f, 3, 1, 2).scaled(th)).flatten()});
  Subalgebra hc = rational_closure(h);
  CHECK(hc.space == Subspace::full(f, 3));
  CHECK(rational_closure(hc) == hc);
}

TEST_CASE("rational closure of span{E12 + theta E13} is the abelian plane") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra h = Subalgebra::make(
      g, {(E(f, 3, 0, 1) + E(f, 3, 0, 2).scaled(th)).flatten()});
  Subalgebra hc = rational_closure(h);
  Subspace expect = span_of(g, {E(f, 3, 0, 1), E(f, 3, 0, 2)});
  CHECK(hc.space == expect);
  CHECK(hc.space.has_rational_entries());
  CHECK(rational_closure(hc) == hc);
}

TEST_CASE("rational closure is minimal among rational bracket-closed superspaces") {
  auto f = sqrt2_field();
  GroupSpec g = GroupSpec::full_ut(f, 4);
  std::mt19937_64 rng(31);
  for (int it = 0; it < 25; ++it) {
    Subspace seed = span_of(g, {random_nilmatrix(f, 4, rng)});
    Subalgebra h = bracket_closure(g, seed);
    Subalgebra hc = rational_closure(h);
    CHECK(hc.space.contains(h.space));
    CHECK(hc.space.has_rational_entries());
    CHECK(rational_closure(hc) == hc);

    // Any rational bracket-closed superspace of h contains hc.
    ScalarMat wrows = rational_component_span(h.space).rows;
    for (int extra = 0; extra < 2; ++extra) {
      ScalarVec v;
      for (int k = 0; k < ambient_dim(4); ++k)
        v.push_back(Scalar::from_rational(f, random_rational(rng)));
      wrows.push_back(std::move(v));
    }
    Subspace w = bracket_closure(g, Subspace::span(f, ambient_dim(4), wrows)).space;
    CHECK(w.contains(hc.space));
  }
}

TEST_CASE("normalizer of span{E12} in ut(3)") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra h = Subalgebra::make(g, {E(f, 3, 0, 1).flatten()});
  Subalgebra nz = normalizer(h);
  CHECK(nz.space == span_of(g, {E(f, 3, 0, 1), E(f, 3, 0, 2)}));
}

TEST_CASE("normalizer strictly grows and fixes brackets") {
  auto f = sqrt2_field();
  GroupSpec g = GroupSpec::full_ut(f, 4);
  std::mt19937_64 rng(37);
  for (int it = 0; it < 15; ++it) {
    Subalgebra h = bracket_closure(g, span_of(g, {random_nilmatrix(f, 4, rng)}));
    Subalgebra nz = normalizer(h);
    CHECK(nz.space.contains(h.space));
    if (h.dim() < g.dim()) CHECK(nz.dim() > h.dim());
    // [n, h] is contained in h for every normalizer basis element.
    for (const auto& x : nz.basis_matrices())
      for (const auto& y : h.basis_matrices())
        CHECK(h.space.contains(bracket(x, y).flatten()));
  }
}

TEST_CASE("normal closure of span{E12} in ut(3)") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra ideal = normal_closure(g, span_of(g, {E(f, 3, 0, 1)}));
  CHECK(ideal.space == span_of(g, {E(f, 3, 0, 1), E(f, 3, 0, 2)}));
}

TEST_CASE("central series of ut(3)") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 3);
  CentralSeries cs = central_series(g);

  REQUIRE(cs.descending.size() == 3);
  CHECK(cs.descending[0] == Subspace::full(f, 3));
  CHECK(cs.descending[1] == span_of(g, {E(f, 3, 0, 2)}));
  CHECK(cs.descending[2].rank() == 0);

  REQUIRE(cs.ascending.size() == 3);
  CHECK(cs.ascending[0].rank() == 0);
  CHECK(cs.ascending[1] == span_of(g, {E(f, 3, 0, 2)}));
  CHECK(cs.ascending[2] == Subspace::full(f, 3));
}

TEST_CASE("central series of ut(4) and rational fixed points") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 4);
  CentralSeries cs = central_series(g);

  REQUIRE(cs.descending.size() == 4);
  CHECK(cs.descending[1] ==
        span_of(g, {E(f, 4, 0, 2), E(f, 4, 0, 3), E(f, 4, 1, 3)}));
  CHECK(cs.descending[2] == span_of(g, {E(f, 4, 0, 3)}));
  CHECK(cs.descending[3].rank() == 0);

  REQUIRE(cs.ascending.size() == 4);
  CHECK(cs.ascending[1] == span_of(g, {E(f, 4, 0, 3)}));
  CHECK(cs.ascending[2] ==
        span_of(g, {E(f, 4, 0, 2), E(f, 4, 0, 3), E(f, 4, 1, 3)}));

  // Every term is already rational closed.
  for (const auto& term : cs.descending) {
    Subalgebra t = Subalgebra::from_subspace(g, term);
    CHECK(rational_closure(t).space == term);
  }
  for (const auto& term : cs.ascending) {
    Subalgebra t = Subalgebra::from_subspace(g, term);
    CHECK(rational_closure(t).space == term);
  }
}

TEST_CASE("subalgebra intersection") {
  auto f = rational_field();
  GroupSpec g = GroupSpec::full_ut(f, 3);
  Subalgebra a = Subalgebra::make(g, {E(f, 3, 0, 1).flatten(), E(f, 3, 0, 2).flatten()});
  Subalgebra b = Subalgebra::make(g, {E(f, 3, 1, 2).flatten(), E(f, 3, 0, 2).flatten()});
  CHECK(subalgebra_intersect(a, b).space == span_of(g, {E(f, 3, 0, 2)}));
}

TEST_CASE("rational closure inside a non-rational group errors") {
  auto f = sqrt2_field();
  Scalar th = Scalar::theta(f);
  // The group is the irrational line itself; closing its algebra must escape.
  GroupSpec line = GroupSpec::make(
      f, 3, {(E(f, 3, 0, 1) + E(f, 3, 0, 2).scaled(th)).flatten()});
  Subalgebra h = Subalgebra::from_subspace(line, line.algebra);
  CHECK_THROWS_AS(rational_closure(h), MathError);
}
