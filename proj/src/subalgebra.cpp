#include "nilclose/subalgebra.hpp"

#include "nilclose/errors.hpp"

namespace nilclose {

namespace {

std::vector<NilMatrix> to_matrices(const FieldPtr& f, int n, const Subspace& s) {
  std::vector<NilMatrix> out;
  out.reserve(s.rank());
  for (const auto& row : s.rows) out.push_back(NilMatrix::from_flat(f, n, row));
  return out;
}

bool is_bracket_closed(const GroupSpec& g, const Subspace& s) {
  auto b = to_matrices(g.field, g.n, s);
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (!s.contains(bracket(b[i], b[j]).flatten())) return false;
  return true;
}

}  // namespace

Subalgebra Subalgebra::make(const GroupSpec& g, ScalarMat basis) {
  return from_subspace(g, Subspace::span(g.field, ambient_dim(g.n), std::move(basis)));
}

Subalgebra Subalgebra::from_subspace(const GroupSpec& g, Subspace s) {
  if (s.ambient != ambient_dim(g.n)) throw MathError("subalgebra ambient mismatch");
  if (!g.algebra.contains(s))
    throw MathError("subalgebra is not contained in the group algebra");
  if (!is_bracket_closed(g, s)) throw MathError("subspace is not bracket closed");
  Subalgebra h;
  h.group = g;
  h.space = std::move(s);
  return h;
}

std::vector<NilMatrix> Subalgebra::basis_matrices() const {
  return to_matrices(group.field, group.n, space);
}

namespace {

Subspace bracket_close_span(const FieldPtr& f, int n, Subspace cur) {
  for (;;) {
    auto b = to_matrices(f, n, cur);
    ScalarMat vecs = cur.rows;
    for (size_t i = 0; i < b.size(); ++i)
      for (size_t j = i + 1; j < b.size(); ++j)
        vecs.push_back(bracket(b[i], b[j]).flatten());
    Subspace next = Subspace::span(f, cur.ambient, std::move(vecs));
    if (next.rank() == cur.rank()) return cur;
    cur = std::move(next);
  }
}

}  // namespace

Subalgebra bracket_closure(const GroupSpec& g, const Subspace& v) {
  return Subalgebra::from_subspace(g, bracket_close_span(g.field, g.n, v));
}

Subalgebra rational_closure(const Subalgebra& h) {
  const GroupSpec& g = h.group;
  Subspace cur = h.space;
  for (;;) {
    Subspace comp = rational_component_span(cur);
    Subspace next = bracket_close_span(g.field, g.n, std::move(comp));
    if (!g.algebra.contains(next))
      throw MathError(
          "rational closure escapes the group algebra; the group is not "
          "rational relative to UT(n, Z)");
    if (next == cur) break;
    cur = std::move(next);
  }
  return Subalgebra::from_subspace(g, std::move(cur));
}

namespace {

// {x in ambient : [x, y_j] in target for each listed y_j}.
Subspace constrained_bracket_space(const GroupSpec& g, const Subspace& ambient,
                                   const std::vector<NilMatrix>& against,
                                   const Subspace& target) {
  int k = ambient.rank();
  if (k == 0) return ambient;
  auto gb = to_matrices(g.field, g.n, ambient);
  // Row per (constraint j, ambient coordinate l), column per coefficient i.
  ScalarMat sys;
  for (const auto& y : against) {
    std::vector<ScalarVec> reduced;
    reduced.reserve(k);
    for (int i = 0; i < k; ++i)
      reduced.push_back(target.reduce(bracket(gb[i], y).flatten()));
    for (int l = 0; l < ambient.ambient; ++l) {
      ScalarVec row;
      row.reserve(k);
      bool nonzero = false;
      for (int i = 0; i < k; ++i) {
        row.push_back(reduced[i][l]);
        if (!row.back().is_zero()) nonzero = true;
      }
      if (nonzero) sys.push_back(std::move(row));
    }
  }
  Subspace coeff = kernel(sys, g.field, k);
  ScalarMat vecs;
  for (const auto& c : coeff.rows) {
    ScalarVec x = zero_vec(g.field, ambient.ambient);
    for (int i = 0; i < k; ++i)
      if (!c[i].is_zero()) x = add(x, scale(ambient.rows[i], c[i]));
    vecs.push_back(std::move(x));
  }
  return Subspace::span(g.field, ambient.ambient, std::move(vecs));
}

}  // namespace

Subalgebra normalizer(const Subalgebra& h) {
  const GroupSpec& g = h.group;
  Subspace nz = constrained_bracket_space(g, g.algebra, h.basis_matrices(), h.space);
  return Subalgebra::from_subspace(g, std::move(nz));
}

Subalgebra normal_closure(const GroupSpec& g, const Subspace& v) {
  if (!g.algebra.contains(v))
    throw MathError("normal closure seed is not contained in the group algebra");
  auto gb = to_matrices(g.field, g.n, g.algebra);
  Subspace cur = v;
  for (;;) {
    ScalarMat vecs = cur.rows;
    for (const auto& w : to_matrices(g.field, g.n, cur))
      for (const auto& x : gb) vecs.push_back(bracket(x, w).flatten());
    Subspace next = Subspace::span(g.field, cur.ambient, std::move(vecs));
    if (next.rank() == cur.rank()) break;
    cur = std::move(next);
  }
  return Subalgebra::from_subspace(g, std::move(cur));
}

CentralSeries central_series(const GroupSpec& g) {
  CentralSeries cs;
  auto gb = to_matrices(g.field, g.n, g.algebra);

  Subspace c = g.algebra;
  cs.descending.push_back(c);
  while (c.rank() > 0) {
    ScalarMat vecs;
    for (const auto& w : to_matrices(g.field, g.n, c))
      for (const auto& x : gb) vecs.push_back(bracket(x, w).flatten());
    Subspace next = Subspace::span(g.field, c.ambient, std::move(vecs));
    if (next.rank() == c.rank())
      throw MathError("descending central series stalled; algebra is not nilpotent");
    c = std::move(next);
    cs.descending.push_back(c);
  }

  Subspace z = Subspace::zero(g.field, g.algebra.ambient);
  cs.ascending.push_back(z);
  while (z.rank() < g.dim()) {
    Subspace next = constrained_bracket_space(g, g.algebra, gb, z);
    if (next.rank() == z.rank())
      throw MathError("ascending central series stalled; algebra is not nilpotent");
    z = std::move(next);
    cs.ascending.push_back(z);
  }
  return cs;
}

Subalgebra subalgebra_intersect(const Subalgebra& a, const Subalgebra& b) {
  if (!(a.group.algebra == b.group.algebra) || a.group.n != b.group.n)
    throw MathError("subalgebra_intersect: different ambient groups");
  return Subalgebra::from_subspace(a.group, subspace_intersect(a.space, b.space));
}

}  // namespace nilclose
