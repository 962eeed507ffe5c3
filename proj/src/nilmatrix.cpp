#include "nilclose/nilmatrix.hpp"

#include "nilclose/errors.hpp"

namespace nilclose {

int ambient_dim(int n) { return n * (n - 1) / 2; }

std::vector<std::pair<int, int>> upper_positions(int n) {
  std::vector<std::pair<int, int>> out;
  out.reserve(ambient_dim(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

int position_index(int n, int i, int j) {
  if (!(0 <= i && i < j && j < n)) throw MathError("not an above-diagonal position");
  // Entries before row i: (n-1) + (n-2) + ... + (n-i).
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

SqMat::SqMat(const FieldPtr& f, int n)
    : field_(f), n_(n), e_(static_cast<size_t>(n) * n, Scalar::zero(f)) {
  if (n < 1) throw MathError("matrix dimension must be positive");
}

SqMat SqMat::identity(const FieldPtr& f, int n) {
  SqMat m(f, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

SqMat SqMat::operator+(const SqMat& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  SqMat r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
  return r;
}

SqMat SqMat::operator-(const SqMat& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  SqMat r = *this;
  for (size_t k = 0; k < e_.size(); ++k) r.e_[k] -= o.e_[k];
  return r;
}

SqMat SqMat::operator*(const SqMat& o) const {
  if (n_ != o.n_) throw MathError("matrix dimension mismatch");
  SqMat r(field_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < n_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  return r;
}

SqMat SqMat::scaled(const Scalar& c) const {
  SqMat r = *this;
  for (auto& x : r.e_) x *= c;
  return r;
}

SqMat SqMat::scaled(const Rational& c) const {
  SqMat r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

bool SqMat::operator==(const SqMat& o) const {
  if (n_ != o.n_) return false;
  for (size_t k = 0; k < e_.size(); ++k)
    if (e_[k] != o.e_[k]) return false;
  return true;
}

NilMatrix::NilMatrix(SqMat m) : m_(std::move(m)) {
  for (int i = 0; i < m_.n(); ++i)
    for (int j = 0; j <= i; ++j)
      if (!m_.at(i, j).is_zero())
        throw MathError("matrix is not strictly upper triangular");
}

NilMatrix NilMatrix::zero(const FieldPtr& f, int n) { return NilMatrix(SqMat(f, n)); }

NilMatrix NilMatrix::basis_elem(const FieldPtr& f, int n, int i, int j) {
  if (!(0 <= i && i < j && j < n)) throw MathError("not an above-diagonal position");
  SqMat m(f, n);
  m.at(i, j) = Scalar::one(f);
  return NilMatrix(std::move(m));
}

NilMatrix NilMatrix::from_flat(const FieldPtr& f, int n, const ScalarVec& coords) {
  if (static_cast<int>(coords.size()) != ambient_dim(n))
    throw MathError("flattened vector has wrong length");
  SqMat m(f, n);
  int k = 0;
  for (auto [i, j] : upper_positions(n)) m.at(i, j) = coords[k++];
  return NilMatrix(std::move(m));
}

ScalarVec NilMatrix::flatten() const {
  ScalarVec out;
  out.reserve(ambient_dim(n()));
  for (auto [i, j] : upper_positions(n())) out.push_back(m_.at(i, j));
  return out;
}

NilMatrix NilMatrix::operator+(const NilMatrix& o) const {
  return NilMatrix(m_ + o.m_);
}

NilMatrix NilMatrix::operator-(const NilMatrix& o) const {
  return NilMatrix(m_ - o.m_);
}

NilMatrix NilMatrix::scaled(const Scalar& c) const { return NilMatrix(m_.scaled(c)); }

UnipotentElement::UnipotentElement(SqMat m) : m_(std::move(m)) {
  const FieldPtr& f = m_.field();
  for (int i = 0; i < m_.n(); ++i) {
    if (m_.at(i, i) != Scalar::one(f)) throw MathError("diagonal entry is not 1");
    for (int j = 0; j < i; ++j)
      if (!m_.at(i, j).is_zero()) throw MathError("nonzero entry below the diagonal");
  }
}

UnipotentElement UnipotentElement::identity(const FieldPtr& f, int n) {
  return UnipotentElement(SqMat::identity(f, n));
}

bool UnipotentElement::is_identity() const {
  return m_ == SqMat::identity(m_.field(), m_.n());
}

bool UnipotentElement::is_integral() const {
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) {
      const Scalar& x = at(i, j);
      if (!x.is_rational() || x.rational_value().get_den() != 1) return false;
    }
  return true;
}

UnipotentElement exp_nil(const NilMatrix& x) {
  int n = x.n();
  SqMat acc = SqMat::identity(x.mat().field(), n);
  SqMat power = SqMat::identity(x.mat().field(), n);
  Rational fact(1);
  for (int k = 1; k < n; ++k) {
    power = power * x.mat();
    fact *= k;
    acc = acc + power.scaled(Rational(1) / fact);
  }
  return UnipotentElement(std::move(acc));
}

NilMatrix log_unip(const UnipotentElement& u) {
  int n = u.n();
  SqMat nmat = u.mat() - SqMat::identity(u.mat().field(), n);
  SqMat acc(u.mat().field(), n);
  SqMat power = SqMat::identity(u.mat().field(), n);
  for (int k = 1; k < n; ++k) {
    power = power * nmat;
    Rational c(1, k);
    if (k % 2 == 0) c = -c;
    acc = acc + power.scaled(c);
  }
  return NilMatrix(std::move(acc));
}

NilMatrix bracket(const NilMatrix& a, const NilMatrix& b) {
  return NilMatrix(a.mat() * b.mat() - b.mat() * a.mat());
}

UnipotentElement group_mul(const UnipotentElement& a, const UnipotentElement& b) {
  return UnipotentElement(a.mat() * b.mat());
}

UnipotentElement group_inv(const UnipotentElement& a) {
  // (I + N)^{-1} = sum (-N)^k, finite.
  int n = a.n();
  SqMat nmat = a.mat() - SqMat::identity(a.mat().field(), n);
  SqMat acc = SqMat::identity(a.mat().field(), n);
  SqMat power = SqMat::identity(a.mat().field(), n);
  for (int k = 1; k < n; ++k) {
    power = power * nmat;
    acc = (k % 2 == 1) ? acc - power : acc + power;
  }
  return UnipotentElement(std::move(acc));
}

UnipotentElement conjugate(const UnipotentElement& a, const UnipotentElement& b) {
  return group_mul(group_mul(a, b), group_inv(a));
}

}  // namespace nilclose
