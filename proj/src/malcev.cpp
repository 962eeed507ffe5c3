#include "nilclose/malcev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nilclose/errors.hpp"

namespace nilclose {

DMat DMat::identity(int dim) {
  DMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

DMat dmul(const DMat& x, const DMat& y) {
  if (x.n != y.n) throw MathError("matrix dimension mismatch");
  DMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      double a = x.at(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += a * y.at(k, j);
    }
  return r;
}

DMat dinv_unipotent(const DMat& u) {
  int n = u.n;
  DMat nil = u;
  for (int i = 0; i < n; ++i) nil.at(i, i) -= 1.0;
  DMat acc = DMat::identity(n);
  DMat power = DMat::identity(n);
  for (int k = 1; k < n; ++k) {
    power = dmul(power, nil);
    double s = (k % 2 == 1) ? -1.0 : 1.0;
    for (size_t t = 0; t < acc.a.size(); ++t) acc.a[t] += s * power.a[t];
  }
  return acc;
}

DMat dexp_nil(const DMat& x) {
  int n = x.n;
  DMat acc = DMat::identity(n);
  DMat power = DMat::identity(n);
  double fact = 1.0;
  for (int k = 1; k < n; ++k) {
    power = dmul(power, x);
    fact *= k;
    for (size_t t = 0; t < acc.a.size(); ++t) acc.a[t] += power.a[t] / fact;
  }
  return acc;
}

DMat dlog_unip(const DMat& u) {
  int n = u.n;
  DMat nil = u;
  for (int i = 0; i < n; ++i) nil.at(i, i) -= 1.0;
  DMat acc(n);
  DMat power = DMat::identity(n);
  for (int k = 1; k < n; ++k) {
    power = dmul(power, nil);
    double c = ((k % 2 == 1) ? 1.0 : -1.0) / k;
    for (size_t t = 0; t < acc.a.size(); ++t) acc.a[t] += c * power.a[t];
  }
  return acc;
}

DMat to_dmat(const UnipotentElement& g) {
  DMat m(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) m.at(i, j) = g.mat().at(i, j).to_double();
  return m;
}

DMat to_dmat(const NilMatrix& x) {
  DMat m(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = i + 1; j < x.n(); ++j) m.at(i, j) = x.at(i, j).to_double();
  return m;
}

namespace {

// First canonical-basis vector of `bigger` outside `cur`, echelon reduced
// against cur and normalized to leading coefficient 1.
ScalarVec next_basis_candidate(const Subspace& bigger, const Subspace& cur) {
  for (const auto& row : bigger.rows) {
    ScalarVec red = cur.reduce(row);
    if (is_zero(red)) continue;
    int lead = 0;
    while (red[lead].is_zero()) ++lead;
    Scalar inv = Scalar::one(cur.field) / red[lead];
    return scale(red, inv);
  }
  throw MathError("no candidate outside the current prefix");
}

}  // namespace

MalcevBasis weak_malcev_through(const Subalgebra& h) {
  const GroupSpec& g = h.group;
  MalcevBasis B;
  B.group = g;
  B.through_rank = h.dim();
  B.prefix_closed = true;
  // The canonical basis of h need not have bracket-closed prefixes, so the
  // part inside h is built by the same normalizer climb.
  if (h.dim() > 0) B.xi = weak_malcev_of(h);

  Subspace cur = h.space;
  while (cur.rank() < g.dim()) {
    Subalgebra curalg = Subalgebra::from_subspace(g, cur);
    Subspace nz = normalizer(curalg).space;
    if (nz.rank() == cur.rank())
      throw MathError("normalizer failed to grow; ambient algebra not nilpotent");
    ScalarVec v = next_basis_candidate(nz, cur);
    B.xi.push_back(NilMatrix::from_flat(g.field, g.n, v));
    ScalarMat rows = cur.rows;
    rows.push_back(std::move(v));
    cur = Subspace::span(g.field, cur.ambient, std::move(rows));
  }
  return B;
}

std::vector<NilMatrix> weak_malcev_of(const Subalgebra& h) {
  // Same climb, but with the ambient group replaced by h itself.  Structure
  // constants of h relative to its own basis need not be rational, so the
  // GroupSpec validation is bypassed via from_subspace on a synthetic spec.
  GroupSpec inner;
  inner.field = h.group.field;
  inner.n = h.group.n;
  inner.algebra = h.space;
  Subalgebra zero =
      Subalgebra::from_subspace(inner, Subspace::zero(inner.field, h.space.ambient));
  return weak_malcev_through(zero).xi;
}

namespace {

// span{xi[a..b)} closed under bracket.
bool range_bracket_closed(const GroupSpec& gs, const std::vector<NilMatrix>& xi,
                          int a, int b) {
  ScalarMat rows;
  for (int k = a; k < b; ++k) rows.push_back(xi[k].flatten());
  Subspace s = Subspace::span(gs.field, ambient_dim(gs.n), std::move(rows));
  for (int p = a; p < b; ++p)
    for (int q = p + 1; q < b; ++q)
      if (!s.contains(bracket(xi[p], xi[q]).flatten())) return false;
  return true;
}

// Coordinates of log(cur) over the columns xi[a..b).
std::optional<ScalarVec> log_coords(const UnipotentElement& cur,
                                    const std::vector<NilMatrix>& xi, int a,
                                    int b, const GroupSpec& gs) {
  ScalarVec target = log_unip(cur).flatten();
  int K = ambient_dim(gs.n);
  ScalarMat A(K, ScalarVec());
  for (int r = 0; r < K; ++r) {
    ScalarVec row;
    row.reserve(b - a);
    for (int c = a; c < b; ++c) row.push_back(xi[c].flatten()[r]);
    A[r] = std::move(row);
  }
  return solve(A, target, gs.field);
}

}  // namespace

ScalarVec second_kind_coords(const UnipotentElement& g, const MalcevBasis& B) {
  const GroupSpec& gs = B.group;
  NilMatrix lg = log_unip(g);
  if (!gs.contains(lg))
    throw MathError("element is not in the group (log outside the algebra)");

  // Peel one exponential factor at a time from whichever end leaves a
  // bracket-closed remainder.  A codimension-1 subalgebra of a nilpotent
  // algebra is an ideal containing the derived algebra, so the coefficient of
  // the peeled vector can be read off log(cur) directly.  Preferring the top
  // end makes the choice deterministic.
  int m = static_cast<int>(B.xi.size());
  ScalarVec s(m, Scalar::zero(gs.field));
  UnipotentElement cur = g;
  int a = 0, b = m;
  while (a < b) {
    auto coeff = log_coords(cur, B.xi, a, b, gs);
    if (!coeff)
      throw MathError("element left the span of the remaining basis vectors");
    if (b - a == 1) {
      s[a] = (*coeff)[0];
      cur = group_mul(cur, exp_nil(B.xi[a].scaled(-s[a])));
      ++a;
    } else if (B.prefix_closed || range_bracket_closed(gs, B.xi, a, b - 1)) {
      s[b - 1] = (*coeff)[b - 1 - a];
      cur = group_mul(cur, exp_nil(B.xi[b - 1].scaled(-s[b - 1])));
      --b;
    } else if (range_bracket_closed(gs, B.xi, a + 1, b)) {
      s[a] = (*coeff)[0];
      cur = group_mul(exp_nil(B.xi[a].scaled(-s[a])), cur);
      ++a;
    } else {
      throw MathError("neither end of the basis leaves a bracket-closed span");
    }
  }
  if (!cur.is_identity())
    throw MathError("second-kind peeling did not terminate at the identity");
  return s;
}

UnipotentElement from_second_kind_coords(const ScalarVec& s, const MalcevBasis& B) {
  if (s.size() != B.xi.size()) throw MathError("coordinate count mismatch");
  UnipotentElement g = UnipotentElement::identity(B.group.field, B.group.n);
  for (size_t i = 0; i < s.size(); ++i)
    g = group_mul(g, exp_nil(B.xi[i].scaled(s[i])));
  return g;
}

namespace {

std::vector<std::pair<int, int>> positions_by_superdiagonal(int n) {
  auto pos = upper_positions(n);
  std::stable_sort(pos.begin(), pos.end(),
                   [](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                     return a.second - a.first < b.second - b.first;
                   });
  return pos;
}

}  // namespace

ReducedPoint reduce_mod_lattice(const UnipotentElement& g) {
  const FieldPtr& f = g.mat().field();
  int n = g.n();
  UnipotentElement rep = g;
  UnipotentElement u = UnipotentElement::identity(f, n);
  for (auto [i, j] : positions_by_superdiagonal(n)) {
    Integer k = rep.at(i, j).floor();
    if (k == 0) continue;
    SqMat shift = SqMat::identity(f, n);
    shift.at(i, j) = Scalar::from_rational(f, Rational(Integer(-k)));
    UnipotentElement t(std::move(shift));
    rep = group_mul(rep, t);
    u = group_mul(u, t);
  }
  return {rep, group_inv(u)};
}

FloatReducedPoint reduce_mod_lattice_float(const DMat& g, double snap_tol) {
  int n = g.n;
  DMat rep = g;
  DMat u = DMat::identity(n);
  for (auto [i, j] : positions_by_superdiagonal(n)) {
    double e = rep.at(i, j);
    double r = std::round(e);
    double k = (std::abs(e - r) < snap_tol) ? r : std::floor(e);
    if (k != 0.0) {
      // rep <- rep * (I - k E_ij): subtract k * column i from column j.
      for (int r2 = 0; r2 <= i; ++r2) rep.at(r2, j) -= k * rep.at(r2, i);
      for (int r2 = 0; r2 <= i; ++r2) u.at(r2, j) -= k * u.at(r2, i);
    }
    if (std::abs(rep.at(i, j)) < snap_tol) rep.at(i, j) = 0.0;
  }
  return {rep, dinv_unipotent(u)};
}

CosetSplit split_coset(const UnipotentElement& g, const MalcevBasis& B) {
  ScalarVec s = second_kind_coords(group_inv(g), B);
  UnipotentElement hpart_inv = UnipotentElement::identity(B.group.field, B.group.n);
  for (int i = 0; i < B.through_rank; ++i)
    hpart_inv = group_mul(hpart_inv, exp_nil(B.xi[i].scaled(s[i])));
  UnipotentElement section_inv = UnipotentElement::identity(B.group.field, B.group.n);
  for (size_t i = B.through_rank; i < B.xi.size(); ++i)
    section_inv = group_mul(section_inv, exp_nil(B.xi[i].scaled(s[i])));
  return {group_inv(section_inv), group_inv(hpart_inv)};
}

namespace {

struct QuotSearch {
  int n;
  const DMat* g1;
  const DMat* g2;
  std::vector<std::pair<int, int>> pos;
  std::vector<double> gamma;  // entries at pos order, integer valued
  double best;

  // Entry (i,j) of g2*gamma given entries of gamma chosen so far at strictly
  // shorter superdiagonals (those are the only ones feeding (i,j)).
  double base_entry(int i, int j) const {
    double v = g2->at(i, j);
    for (int k = i + 1; k < j; ++k) {
      double gk = gamma_at(k, j);
      if (gk != 0.0) v += g2->at(i, k) * gk;
    }
    return v;
  }

  double gamma_at(int i, int j) const {
    for (size_t t = 0; t < pos.size(); ++t)
      if (pos[t].first == i && pos[t].second == j) return gamma[t];
    return 0.0;
  }

  void dfs(size_t idx, double acc) {
    if (acc >= best) return;
    if (idx == pos.size()) {
      best = acc;
      return;
    }
    auto [i, j] = pos[idx];
    double base = base_entry(i, j);
    double target = g1->at(i, j);
    double kstar = std::round(target - base);
    for (double dk : {0.0, -1.0, 1.0, -2.0, 2.0}) {
      double k = kstar + dk;
      double r = target - base - k;
      gamma[idx] = k;
      dfs(idx + 1, acc + r * r);
    }
    gamma[idx] = 0.0;
  }
};

}  // namespace

double quotient_distance(const DMat& g1, const DMat& g2) {
  if (g1.n != g2.n) throw MathError("matrix dimension mismatch");
  // The Frobenius norm is not invariant under right multiplication by lattice
  // elements, so the one-sided minimum is order dependent; taking both orders
  // makes the result symmetric by construction.
  QuotSearch s;
  s.n = g1.n;
  s.pos = positions_by_superdiagonal(g1.n);
  s.gamma.assign(s.pos.size(), 0.0);
  s.best = std::numeric_limits<double>::infinity();
  s.g1 = &g1;
  s.g2 = &g2;
  s.dfs(0, 0.0);
  s.g1 = &g2;
  s.g2 = &g1;
  s.dfs(0, 0.0);
  return std::sqrt(s.best);
}

double quotient_distance(const UnipotentElement& g1, const UnipotentElement& g2) {
  return quotient_distance(to_dmat(g1), to_dmat(g2));
}

}  // namespace nilclose
