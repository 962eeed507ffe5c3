#include "nilclose/linalg.hpp"

#include <algorithm>

#include "nilclose/errors.hpp"

namespace nilclose {

ScalarVec zero_vec(const FieldPtr& f, int n) {
  return ScalarVec(n, Scalar::zero(f));
}

ScalarVec add(const ScalarVec& a, const ScalarVec& b) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  ScalarVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

ScalarVec sub(const ScalarVec& a, const ScalarVec& b) {
  if (a.size() != b.size()) throw MathError("vector length mismatch");
  ScalarVec r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

ScalarVec scale(const ScalarVec& a, const Scalar& c) {
  ScalarVec r = a;
  for (auto& x : r) x *= c;
  return r;
}

bool is_zero(const ScalarVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

ScalarMat rref(ScalarMat m) {
  if (m.empty()) return m;
  size_t ncols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < ncols && row < m.size(); ++col) {
    size_t piv = row;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    Scalar inv = Scalar::one(m[row][col].field()) / m[row][col];
    for (size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      Scalar c = m[i][col];
      for (size_t j = col; j < ncols; ++j) m[i][j] -= c * m[row][j];
    }
    ++row;
  }
  m.erase(std::remove_if(m.begin(), m.end(),
                         [](const ScalarVec& r) { return is_zero(r); }),
          m.end());
  return m;
}

Subspace Subspace::zero(const FieldPtr& f, int ambient) {
  Subspace s;
  s.field = f;
  s.ambient = ambient;
  return s;
}

Subspace Subspace::full(const FieldPtr& f, int ambient) {
  Subspace s;
  s.field = f;
  s.ambient = ambient;
  for (int i = 0; i < ambient; ++i) {
    ScalarVec row = zero_vec(f, ambient);
    row[i] = Scalar::one(f);
    s.rows.push_back(std::move(row));
  }
  return s;
}

Subspace Subspace::span(const FieldPtr& f, int ambient, ScalarMat vectors) {
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != ambient)
      throw MathError("spanning vector has wrong length");
  Subspace s;
  s.field = f;
  s.ambient = ambient;
  s.rows = rref(std::move(vectors));
  return s;
}

ScalarVec Subspace::reduce(const ScalarVec& v) const {
  if (static_cast<int>(v.size()) != ambient)
    throw MathError("vector length does not match ambient dimension");
  ScalarVec r = v;
  for (const auto& basis_row : rows) {
    int piv = 0;
    while (piv < ambient && basis_row[piv].is_zero()) ++piv;
    if (piv == ambient) continue;
    if (r[piv].is_zero()) continue;
    Scalar c = r[piv];
    for (int j = piv; j < ambient; ++j) r[j] -= c * basis_row[j];
  }
  return r;
}

bool Subspace::contains(const ScalarVec& v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& r : other.rows)
    if (!contains(r)) return false;
  return true;
}

bool Subspace::has_rational_entries() const {
  for (const auto& r : rows)
    for (const auto& x : r)
      if (!x.is_rational()) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const {
  if (ambient != o.ambient || rows.size() != o.rows.size()) return false;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      if (rows[i][j] != o.rows[i][j]) return false;
  return true;
}

std::optional<ScalarVec> solve(const ScalarMat& A, const ScalarVec& b,
                               const FieldPtr& f) {
  size_t nrows = A.size();
  if (b.size() != nrows) throw MathError("solve: shape mismatch");
  size_t ncols = nrows ? A[0].size() : 0;
  ScalarMat aug = A;
  for (size_t i = 0; i < nrows; ++i) aug[i].push_back(b[i]);
  aug = rref(std::move(aug));
  ScalarVec x = zero_vec(f, ncols);
  for (const auto& row : aug) {
    size_t piv = 0;
    while (piv <= ncols && row[piv].is_zero()) ++piv;
    if (piv == ncols) return std::nullopt;  // 0 = 1 row
    x[piv] = row[ncols];
  }
  return x;
}

Subspace kernel(const ScalarMat& M, const FieldPtr& f, int ncols) {
  ScalarMat red = rref(M);
  std::vector<int> pivot_of_col(ncols, -1);
  for (size_t i = 0; i < red.size(); ++i) {
    int piv = 0;
    while (piv < ncols && red[i][piv].is_zero()) ++piv;
    if (piv < ncols) pivot_of_col[piv] = static_cast<int>(i);
  }
  ScalarMat basis;
  for (int freecol = 0; freecol < ncols; ++freecol) {
    if (pivot_of_col[freecol] >= 0) continue;
    ScalarVec v = zero_vec(f, ncols);
    v[freecol] = Scalar::one(f);
    for (int c = 0; c < ncols; ++c) {
      int r = pivot_of_col[c];
      if (r >= 0) v[c] = -red[r][freecol];
    }
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, ncols, std::move(basis));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw MathError("subspace_sum: ambient mismatch");
  ScalarMat all = a.rows;
  all.insert(all.end(), b.rows.begin(), b.rows.end());
  return Subspace::span(a.field, a.ambient, std::move(all));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient)
    throw MathError("subspace_intersect: ambient mismatch");
  // v in both spans iff v = x a_rows = y b_rows; stack the coefficient system
  // a_rows^T x - b_rows^T y = 0 and read off x.
  int ka = a.rank(), kb = b.rank();
  if (ka == 0 || kb == 0) return Subspace::zero(a.field, a.ambient);
  ScalarMat sys(a.ambient, zero_vec(a.field, ka + kb));
  for (int i = 0; i < ka; ++i)
    for (int c = 0; c < a.ambient; ++c) sys[c][i] = a.rows[i][c];
  for (int i = 0; i < kb; ++i)
    for (int c = 0; c < a.ambient; ++c) sys[c][ka + i] = -b.rows[i][c];
  Subspace coeff = kernel(sys, a.field, ka + kb);
  ScalarMat vecs;
  for (const auto& xy : coeff.rows) {
    ScalarVec v = zero_vec(a.field, a.ambient);
    for (int i = 0; i < ka; ++i)
      if (!xy[i].is_zero()) v = add(v, scale(a.rows[i], xy[i]));
    vecs.push_back(std::move(v));
  }
  return Subspace::span(a.field, a.ambient, std::move(vecs));
}

std::vector<std::pair<int, std::vector<Rational>>> rational_components(
    const ScalarVec& v) {
  std::vector<std::pair<int, std::vector<Rational>>> out;
  if (v.empty()) return out;
  int D = v[0].field()->degree();
  int m = static_cast<int>(v.size());
  for (int j = 0; j < D; ++j) {
    std::vector<Rational> comp(m, Rational(0));
    bool nonzero = false;
    for (int i = 0; i < m; ++i) {
      comp[i] = v[i].coords()[j];
      if (comp[i] != 0) nonzero = true;
    }
    if (nonzero) out.emplace_back(j, std::move(comp));
  }
  return out;
}

Subspace rational_component_span(const Subspace& s) {
  ScalarMat vecs;
  for (const auto& row : s.rows) {
    for (auto& [j, comp] : rational_components(row)) {
      ScalarVec v;
      v.reserve(s.ambient);
      for (const auto& q : comp) v.push_back(Scalar::from_rational(s.field, q));
      vecs.push_back(std::move(v));
    }
  }
  return Subspace::span(s.field, s.ambient, std::move(vecs));
}

Subspace integer_kernel(const FieldPtr& f, const std::vector<ScalarVec>& vectors,
                        int ambient) {
  ScalarMat rows;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != ambient)
      throw MathError("integer_kernel: vector length mismatch");
    for (auto& [j, comp] : rational_components(v)) {
      ScalarVec r;
      r.reserve(ambient);
      for (const auto& q : comp) r.push_back(Scalar::from_rational(f, q));
      rows.push_back(std::move(r));
    }
  }
  return kernel(rows, f, ambient);
}

std::vector<std::vector<Integer>> integer_basis(const Subspace& s) {
  std::vector<std::vector<Integer>> out;
  for (const auto& row : s.rows) {
    Integer lcm(1);
    for (const auto& x : row) {
      if (!x.is_rational())
        throw MathError("integer_basis requires rational entries");
      Integer den = x.rational_value().get_den();
      Integer g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
      lcm = lcm / g * den;
    }
    std::vector<Integer> iv;
    Integer content(0);
    for (const auto& x : row) {
      Rational q = x.rational_value() * Rational(lcm);
      iv.push_back(q.get_num());
      Integer g;
      mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), iv.back().get_mpz_t());
      content = g;
    }
    if (content > 1)
      for (auto& z : iv) z /= content;
    for (const auto& z : iv) {
      if (z == 0) continue;
      if (z < 0)
        for (auto& w : iv) w = -w;
      break;
    }
    out.push_back(std::move(iv));
  }
  return out;
}

}  // namespace nilclose
