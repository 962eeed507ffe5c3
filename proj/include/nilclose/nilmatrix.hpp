#pragma once

#include "nilclose/linalg.hpp"

namespace nilclose {

// Strictly-upper-triangular positions (i,j), i < j, in row-major order.  This
// fixed order is the flattening convention for every ambient coordinate space.
int ambient_dim(int n);
std::vector<std::pair<int, int>> upper_positions(int n);
int position_index(int n, int i, int j);

// Dense exact square matrix; small n only.
class SqMat {
 public:
  SqMat(const FieldPtr& f, int n);  // zero matrix
  static SqMat identity(const FieldPtr& f, int n);

  int n() const { return n_; }
  const FieldPtr& field() const { return field_; }
  Scalar& at(int i, int j) { return e_[i * n_ + j]; }
  const Scalar& at(int i, int j) const { return e_[i * n_ + j]; }

  SqMat operator+(const SqMat& o) const;
  SqMat operator-(const SqMat& o) const;
  SqMat operator*(const SqMat& o) const;
  SqMat scaled(const Scalar& c) const;
  SqMat scaled(const Rational& c) const;
  bool operator==(const SqMat& o) const;
  bool operator!=(const SqMat& o) const { return !(*this == o); }

 private:
  FieldPtr field_;
  int n_;
  std::vector<Scalar> e_;
};

// Element of the Lie algebra ut(n): strictly upper triangular.
class NilMatrix {
 public:
  explicit NilMatrix(SqMat m);  // validates shape
  static NilMatrix zero(const FieldPtr& f, int n);
  static NilMatrix basis_elem(const FieldPtr& f, int n, int i, int j);
  static NilMatrix from_flat(const FieldPtr& f, int n, const ScalarVec& coords);

  const SqMat& mat() const { return m_; }
  int n() const { return m_.n(); }
  const Scalar& at(int i, int j) const { return m_.at(i, j); }
  ScalarVec flatten() const;

  NilMatrix operator+(const NilMatrix& o) const;
  NilMatrix operator-(const NilMatrix& o) const;
  NilMatrix scaled(const Scalar& c) const;
  bool operator==(const NilMatrix& o) const { return m_ == o.m_; }

 private:
  SqMat m_;
};

// Element of the group UT(n): unit diagonal, zeros below.
class UnipotentElement {
 public:
  explicit UnipotentElement(SqMat m);  // validates shape
  static UnipotentElement identity(const FieldPtr& f, int n);

  const SqMat& mat() const { return m_; }
  int n() const { return m_.n(); }
  const Scalar& at(int i, int j) const { return m_.at(i, j); }
  bool is_identity() const;
  bool is_integral() const;

  bool operator==(const UnipotentElement& o) const { return m_ == o.m_; }

 private:
  SqMat m_;
};

// Finite series exp(N) = sum N^k / k!, k < n.
UnipotentElement exp_nil(const NilMatrix& x);
// Finite series log(U) = sum (-1)^{k+1} (U-I)^k / k, k < n.  Mutually inverse
// with exp_nil, exactly.
NilMatrix log_unip(const UnipotentElement& u);

NilMatrix bracket(const NilMatrix& a, const NilMatrix& b);
UnipotentElement group_mul(const UnipotentElement& a, const UnipotentElement& b);
UnipotentElement group_inv(const UnipotentElement& a);
// a b a^{-1}
UnipotentElement conjugate(const UnipotentElement& a, const UnipotentElement& b);

}  // namespace nilclose
