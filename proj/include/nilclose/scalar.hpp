#pragma once

#include <string>
#include <vector>

#include "nilclose/field.hpp"

namespace nilclose {

// Element of Q(theta), stored as coordinates (c0..c_{D-1}) in the power basis
// 1, theta, ..., theta^{D-1}.  All arithmetic is exact; ordering is decided by
// refining the isolating interval of theta.
class Scalar {
 public:
  Scalar() = default;  // null scalar; any use throws

  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar theta(const FieldPtr& f);
  static Scalar from_rational(const FieldPtr& f, const Rational& q);
  static Scalar from_coords(const FieldPtr& f, std::vector<Rational> coords);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;  // all theta-power coordinates above 1 vanish
  // Requires is_rational().
  const Rational& rational_value() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar operator*(const Rational& q) const;
  Scalar operator/(const Rational& q) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Total order consistent with the real embedding: -1, 0, +1.
  int cmp(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return cmp(o) < 0; }

  Integer floor() const;
  double to_double() const;

  // Expression in the input grammar, e.g. "1/2 + 3*theta^2".
  std::string str() const;

 private:
  void require(const Scalar& o) const;  // same field, both non-null
  void require() const;

  FieldPtr field_;
  std::vector<Rational> c_;
};

}  // namespace nilclose
