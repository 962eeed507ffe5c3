#include "nilclose/groupspec.hpp"

#include "nilclose/errors.hpp"

namespace nilclose {

std::optional<ScalarVec> coords_in_span(const Subspace& s, const ScalarVec& v) {
  if (!s.contains(v)) return std::nullopt;
  ScalarVec c;
  c.reserve(s.rank());
  for (const auto& row : s.rows) {
    int piv = 0;
    while (piv < s.ambient && row[piv].is_zero()) ++piv;
    c.push_back(v[piv]);
  }
  return c;
}

GroupSpec GroupSpec::full_ut(const FieldPtr& f, int n) {
  GroupSpec g;
  g.field = f;
  g.n = n;
  g.algebra = Subspace::full(f, ambient_dim(n));
  return g;
}

GroupSpec GroupSpec::make(const FieldPtr& f, int n, ScalarMat basis) {
  GroupSpec g;
  g.field = f;
  g.n = n;
  g.algebra = Subspace::span(f, ambient_dim(n), std::move(basis));

  std::vector<NilMatrix> b;
  for (const auto& row : g.algebra.rows) b.push_back(NilMatrix::from_flat(f, n, row));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j) {
      ScalarVec w = bracket(b[i], b[j]).flatten();
      auto c = coords_in_span(g.algebra, w);
      if (!c)
        throw MathError("lie_algebra is not bracket closed");
      for (const auto& x : *c)
        if (!x.is_rational())
          throw MathError("irrational structure constants relative to the canonical basis");
    }
  return g;
}

bool GroupSpec::contains_group_element(const UnipotentElement& g) const {
  return contains(log_unip(g));
}

}  // namespace nilclose
