#include "nilclose/polymatrix.hpp"

#include <cmath>

#include "nilclose/errors.hpp"

namespace nilclose {

PolyMatrix::PolyMatrix(const FieldPtr& f, int n, int nvars, int degree_cap)
    : field_(f), n_(n), nvars_(nvars) {
  if (n < 1) throw MathError("matrix dimension must be positive");
  e_.assign(static_cast<size_t>(n) * n, Polynomial(f, nvars, degree_cap));
}

PolyMatrix PolyMatrix::identity(const FieldPtr& f, int n, int nvars, int degree_cap) {
  PolyMatrix m(f, n, nvars, degree_cap);
  for (int i = 0; i < n; ++i)
    m.at(i, i) = Polynomial::constant(f, nvars, Scalar::one(f), degree_cap);
  return m;
}

PolyMatrix PolyMatrix::from_constant(const SqMat& c, int nvars, int degree_cap) {
  PolyMatrix m(c.field(), c.n(), nvars, degree_cap);
  for (int i = 0; i < c.n(); ++i)
    for (int j = 0; j < c.n(); ++j)
      m.at(i, j) = Polynomial::constant(c.field(), nvars, c.at(i, j), degree_cap);
  return m;
}

bool PolyMatrix::is_unipotent_shape() const {
  for (int i = 0; i < n_; ++i) {
    const Polynomial& d = at(i, i);
    if (!d.is_constant() || d.constant_term() != Scalar::one(field_)) return false;
    for (int j = 0; j < i; ++j)
      if (!at(i, j).is_zero()) return false;
  }
  return true;
}

bool PolyMatrix::is_nilpotent_shape() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j <= i; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

void PolyMatrix::require_unipotent_shape() const {
  if (!is_unipotent_shape())
    throw MathError("polynomial matrix is not unipotent shaped");
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  PolyMatrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] + o.e_[k];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  PolyMatrix r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = r.e_[k] - o.e_[k];
  return r;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  PolyMatrix r(field_, n_, nvars_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Polynomial& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        const Polynomial& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

PolyMatrix PolyMatrix::scaled(const Scalar& c) const {
  PolyMatrix r = *this;
  for (auto& p : r.e_) p = p.scaled(c);
  return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (n_ != o.n_ || nvars_ != o.nvars_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (!(e_[k] == o.e_[k])) return false;
  return true;
}

UnipotentElement PolyMatrix::eval_unipotent(const ScalarVec& x) const {
  SqMat m(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m.at(i, j) = at(i, j).eval(x);
  return UnipotentElement(std::move(m));
}

PolyMatrix symbolic_log_translate(const PolyMatrix& F, const UnipotentElement& c) {
  F.require_unipotent_shape();
  if (c.n() != F.n()) throw MathError("translate has wrong dimension");
  PolyMatrix M = PolyMatrix::from_constant(group_inv(c).mat(), F.nvars()) * F;
  PolyMatrix N = M - PolyMatrix::identity(F.field(), F.n(), F.nvars());
  PolyMatrix acc(F.field(), F.n(), F.nvars());
  PolyMatrix power = PolyMatrix::identity(F.field(), F.n(), F.nvars());
  for (int k = 1; k < F.n(); ++k) {
    power = power * N;
    Scalar coef = Scalar::from_rational(F.field(), Rational(k % 2 == 1 ? 1 : -1, k));
    acc = acc + power.scaled(coef);
  }
  if (!acc.is_nilpotent_shape())
    throw MathError("logarithm is not nilpotent shaped");
  return acc;
}

PolyMatrix poly_exp(const Polynomial& p, const NilMatrix& N) {
  const FieldPtr& f = N.mat().field();
  int n = N.n();
  PolyMatrix acc = PolyMatrix::identity(f, n, p.nvars(), p.degree_cap());
  SqMat power = SqMat::identity(f, n);
  Polynomial pk = Polynomial::constant(f, p.nvars(), Scalar::one(f), p.degree_cap());
  Rational fact(1);
  for (int k = 1; k < n; ++k) {
    power = power * N.mat();
    pk = pk * p;
    fact *= Rational(k);
    Rational inv_fact = Rational(1) / fact;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (power.at(i, j).is_zero()) continue;
        acc.at(i, j) =
            acc.at(i, j) + pk.scaled(power.at(i, j) * inv_fact);
      }
  }
  return acc;
}

Subspace coefficient_span(const PolyMatrix& P) {
  if (!P.is_nilpotent_shape())
    throw MathError("coefficient_span expects a nilpotent-shaped matrix");
  const FieldPtr& f = P.field();
  int n = P.n();
  std::map<std::vector<unsigned>, SqMat> by_monomial;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (const auto& [e, coeff] : P.at(i, j).terms()) {
        auto it = by_monomial.find(e);
        if (it == by_monomial.end())
          it = by_monomial.emplace(e, SqMat(f, n)).first;
        it->second.at(i, j) = coeff;
      }
  const std::vector<unsigned> zero_exps(P.nvars(), 0);
  ScalarMat vecs;
  for (const auto& [e, m] : by_monomial) {
    if (e == zero_exps)
      throw MathError("nonzero constant term; translate by the base point first");
    vecs.push_back(NilMatrix(m).flatten());
  }
  return Subspace::span(f, ambient_dim(n), std::move(vecs));
}

FloatPolyMatrix::FloatPolyMatrix(const PolyMatrix& F)
    : n_(F.n()), nvars_(F.nvars()) {
  entries_.resize(static_cast<size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      auto& terms = entries_[i * n_ + j];
      for (const auto& [e, c] : F.at(i, j).terms())
        terms.push_back({c.to_double(), e});
    }
}

void FloatPolyMatrix::eval(const std::vector<double>& x,
                           std::vector<double>& out) const {
  out.assign(static_cast<size_t>(n_) * n_, 0.0);
  for (size_t k = 0; k < entries_.size(); ++k) {
    double acc = 0;
    for (const auto& t : entries_[k]) {
      double v = t.coeff;
      for (int i = 0; i < nvars_; ++i)
        if (t.exps[i]) v *= std::pow(x[i], static_cast<int>(t.exps[i]));
      acc += v;
    }
    if (std::abs(acc) > 1e300 || !std::isfinite(acc)) {
      std::string pt;
      for (double xi : x) pt += (pt.empty() ? "" : ", ") + std::to_string(xi);
      throw MathError("matrix entry overflow (>1e300) at parameter (" + pt + ")");
    }
    out[k] = acc;
  }
}

}  // namespace nilclose
