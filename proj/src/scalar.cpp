#include "nilclose/scalar.hpp"

#include "nilclose/errors.hpp"

namespace nilclose {

namespace {

// Coordinates <-> polynomial representative of degree < D.
qpoly::Poly to_poly(const std::vector<Rational>& c) {
  qpoly::Poly p = c;
  qpoly::trim(p);
  return p;
}

std::vector<Rational> from_poly(const qpoly::Poly& p, int D) {
  std::vector<Rational> c(D, Rational(0));
  for (size_t i = 0; i < p.size(); ++i) c[i] = p[i];
  return c;
}

}  // namespace

void Scalar::require() const {
  if (!field_) throw MathError("operation on a null scalar");
}

void Scalar::require(const Scalar& o) const {
  require();
  o.require();
  if (field_ != o.field_ && !field_->same_field(*o.field_))
    throw MathError("scalars belong to different fields");
}

Scalar Scalar::zero(const FieldPtr& f) {
  return from_coords(f, std::vector<Rational>(f->degree(), Rational(0)));
}

Scalar Scalar::one(const FieldPtr& f) { return from_rational(f, Rational(1)); }

Scalar Scalar::theta(const FieldPtr& f) {
  std::vector<Rational> c(f->degree(), Rational(0));
  if (f->degree() == 1) {
    // theta is the rational root itself: x - c0 = 0.
    c[0] = -f->min_poly()[0];
  } else {
    c[1] = 1;
  }
  return from_coords(f, std::move(c));
}

Scalar Scalar::from_rational(const FieldPtr& f, const Rational& q) {
  std::vector<Rational> c(f->degree(), Rational(0));
  c[0] = q;
  return from_coords(f, std::move(c));
}

Scalar Scalar::from_coords(const FieldPtr& f, std::vector<Rational> coords) {
  if (!f) throw MathError("null field");
  if (static_cast<int>(coords.size()) != f->degree())
    throw MathError("coordinate vector length does not match field degree");
  // gmp rationals are only guaranteed canonical after arithmetic; normalize
  // caller-supplied values so exact equality is coordinate equality.
  for (auto& c : coords) c.canonicalize();
  Scalar s;
  s.field_ = f;
  s.c_ = std::move(coords);
  return s;
}

bool Scalar::is_zero() const {
  require();
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  require();
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

const Rational& Scalar::rational_value() const {
  if (!is_rational()) throw MathError("scalar is not rational");
  return c_[0];
}

Scalar Scalar::operator-() const {
  require();
  Scalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require(o);
  Scalar r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  require(o);
  Scalar r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  require(o);
  qpoly::Poly prod = qpoly::mul(to_poly(c_), to_poly(o.c_));
  qpoly::Poly rem = qpoly::divmod(prod, field_->min_poly()).second;
  return from_coords(field_, from_poly(rem, field_->degree()));
}

Scalar Scalar::operator*(const Rational& q) const {
  require();
  Scalar r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

Scalar Scalar::operator/(const Rational& q) const {
  require();
  if (q == 0) throw ZeroDivisorError("division by zero", "");
  Scalar r = *this;
  for (auto& x : r.c_) x /= q;
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
  require(o);
  if (o.is_zero()) throw ZeroDivisorError("division by zero", "");
  qpoly::Poly b = to_poly(o.c_);
  // Extended Euclid: u*b + v*min_poly = g.  b is invertible iff g is constant.
  qpoly::Poly r0 = field_->min_poly(), r1 = b;
  qpoly::Poly u0{}, u1{Rational(1)};
  while (qpoly::degree(r1) > 0) {
    auto [q, r2] = qpoly::divmod(r0, r1);
    qpoly::Poly u2 = qpoly::sub(u0, qpoly::mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  if (qpoly::degree(r1) < 0) {
    // gcd(b, min_poly) = r0, nonconstant: b is a zero divisor.
    qpoly::Poly g = r0;
    if (qpoly::degree(g) >= 0 && g[qpoly::degree(g)] != 1)
      g = qpoly::scale(g, Rational(1) / g[qpoly::degree(g)]);
    throw ZeroDivisorError(
        "division by a zero divisor; min_poly has factor " + qpoly::str(g),
        qpoly::str(g));
  }
  // r1 constant and nonzero: inverse of b is u1 / r1.
  qpoly::Poly inv = qpoly::scale(u1, Rational(1) / r1[0]);
  inv = qpoly::divmod(inv, field_->min_poly()).second;
  Scalar binv = from_coords(field_, from_poly(inv, field_->degree()));
  return *this * binv;
}

bool Scalar::operator==(const Scalar& o) const {
  require(o);
  return c_ == o.c_;
}

int Scalar::cmp(const Scalar& o) const {
  require(o);
  Scalar d = *this - o;
  if (d.is_zero()) return 0;
  qpoly::Poly dp = to_poly(d.c_);
  if (qpoly::degree(dp) == 0) return sgn(dp[0]);

  qpoly::Poly g = qpoly::gcd(dp, field_->min_poly());
  if (qpoly::degree(g) > 0 && field_->theta_is_root_of(g))
    throw ZeroDivisorError(
        "comparison of numerically equal scalars with distinct coordinates; "
        "min_poly has factor " + qpoly::str(g),
        qpoly::str(g));

  // d(theta) != 0; refine until the enclosure excludes zero.
  Rational eps = field_->spec().hi - field_->spec().lo;
  for (;;) {
    auto [lo, hi] = field_->theta_interval(eps);
    auto [vlo, vhi] = qpoly::eval_interval(dp, lo, hi);
    if (sgn(vlo) > 0) return 1;
    if (sgn(vhi) < 0) return -1;
    if (lo == hi) return sgn(qpoly::eval(dp, lo));
    eps /= 16;
  }
}

Integer Scalar::floor() const {
  require();
  if (is_rational()) return rational_floor(c_[0]);
  qpoly::Poly p = to_poly(c_);
  Rational eps = field_->spec().hi - field_->spec().lo;
  for (;;) {
    auto [lo, hi] = field_->theta_interval(eps);
    auto [vlo, vhi] = qpoly::eval_interval(p, lo, hi);
    Integer flo = rational_floor(vlo), fhi = rational_floor(vhi);
    if (flo == fhi) return flo;
    if (vhi == fhi) {
      // Enclosure's upper endpoint is exactly the integer fhi; decide whether
      // the value equals it (possible only with a reducible min_poly).
      if (cmp(from_rational(field_, Rational(fhi))) == 0) return fhi;
    }
    if (lo == hi) return rational_floor(qpoly::eval(p, lo));
    if (fhi - flo == 1 && vhi != fhi) {
      // Straddling a single integer boundary: compare against it exactly.
      int c = cmp(from_rational(field_, Rational(fhi)));
      if (c == 0) return fhi;
      if (c > 0) return fhi;
      return flo;
    }
    eps /= 16;
  }
}

double Scalar::to_double() const {
  require();
  double th = field_->theta_double();
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * th + nilclose::to_double(*it);
  return acc;
}

std::string Scalar::str() const {
  require();
  bool all_zero = true;
  std::string s;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    all_zero = false;
    if (!s.empty()) s += (sgn(c_[k]) > 0) ? " + " : " - ";
    else if (sgn(c_[k]) < 0) s += "-";
    Rational a = abs(c_[k]);
    bool unit = (a == 1 && k > 0);
    if (!unit) s += rational_str(a);
    if (k > 0) {
      if (!unit) s += "*";
      s += "theta";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return all_zero ? "0" : s;
}

}  // namespace nilclose
