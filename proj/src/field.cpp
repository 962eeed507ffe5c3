#include "nilclose/field.hpp"

#include <algorithm>

#include "nilclose/errors.hpp"

namespace nilclose {

namespace qpoly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[d] == 0) --d;
  return d;
}

Poly derivative(const Poly& p) {
  Poly r;
  for (size_t k = 1; k < p.size(); ++k) r.push_back(p[k] * static_cast<long>(k));
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

Poly scale(const Poly& a, const Rational& c) {
  Poly r = a;
  for (auto& x : r) x *= c;
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  int db = degree(b);
  if (db < 0) throw MathError("polynomial division by zero");
  Poly rem = a;
  trim(rem);
  Poly quo(std::max<int>(degree(rem) - db + 1, 0), Rational(0));
  while (degree(rem) >= db) {
    int dr = degree(rem);
    Rational c = rem[dr] / b[db];
    quo[dr - db] = c;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= c * b[i];
    trim(rem);
  }
  return {quo, rem};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (degree(b) >= 0) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  int d = degree(a);
  if (d >= 0 && a[d] != 1) a = scale(a, Rational(1) / a[d]);
  return a;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<Rational, Rational> eval_interval(const Poly& p, const Rational& lo,
                                            const Rational& hi) {
  Rational alo(0), ahi(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    // [alo,ahi] * [lo,hi] + coefficient
    Rational c1 = alo * lo, c2 = alo * hi, c3 = ahi * lo, c4 = ahi * hi;
    Rational mn = std::min(std::min(c1, c2), std::min(c3, c4));
    Rational mx = std::max(std::max(c1, c2), std::max(c3, c4));
    alo = mn + *it;
    ahi = mx + *it;
  }
  return {alo, ahi};
}

namespace {
int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sgn(eval(q, x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
  }
  return var;
}
}  // namespace

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi) {
  std::vector<Poly> chain{p, derivative(p)};
  while (degree(chain.back()) > 0) {
    Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (degree(r) < 0) break;
    chain.push_back(scale(r, Rational(-1)));
  }
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

std::string str(const Poly& p) {
  if (degree(p) < 0) return "0";
  std::string s;
  for (int k = degree(p); k >= 0; --k) {
    if (p[k] == 0) continue;
    if (!s.empty()) s += (sgn(p[k]) > 0) ? " + " : " - ";
    else if (sgn(p[k]) < 0) s += "-";
    Rational a = abs(p[k]);
    bool unit = (a == 1 && k > 0);
    if (!unit) s += rational_str(a);
    if (k > 0) {
      if (!unit) s += "*";
      s += "x";
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

}  // namespace qpoly

FieldPtr Field::make(const FieldSpec& spec) {
  const auto& mp = spec.min_poly;
  if (mp.size() < 2) throw MathError("min_poly must have degree >= 1");
  if (mp.back() != 1) throw MathError("min_poly must be monic");
  auto f = std::shared_ptr<Field>(new Field());
  f->spec_ = spec;
  f->deg_ = static_cast<int>(mp.size()) - 1;
  f->p_.reserve(mp.size());
  for (const auto& c : mp) f->p_.emplace_back(c);

  qpoly::Poly g = qpoly::gcd(f->p_, qpoly::derivative(f->p_));
  if (qpoly::degree(g) > 0)
    throw MathError("min_poly is not squarefree; repeated factor " + qpoly::str(g));

  if (!(spec.lo < spec.hi)) throw MathError("root_interval must satisfy lo < hi");
  Rational plo = qpoly::eval(f->p_, spec.lo);
  Rational phi = qpoly::eval(f->p_, spec.hi);
  if (plo == 0 || phi == 0)
    throw MathError("min_poly vanishes at a root_interval endpoint; shrink the interval");
  int nroots = qpoly::sturm_count(f->p_, spec.lo, spec.hi);
  if (nroots == 0) throw MathError("root_interval contains no root of min_poly");
  if (nroots > 1)
    throw MathError("root_interval contains " + std::to_string(nroots) +
                    " roots of min_poly; it must isolate exactly one");

  f->lo_ = spec.lo;
  f->hi_ = spec.hi;
  f->sign_lo_ = sgn(plo);
  return f;
}

void Field::refine_once_locked() const {
  if (lo_ == hi_) return;
  Rational mid = (lo_ + hi_) / 2;
  Rational pm = qpoly::eval(p_, mid);
  if (pm == 0) {
    lo_ = hi_ = mid;
    sign_lo_ = 0;
    return;
  }
  if (sgn(pm) == sign_lo_) lo_ = mid;
  else hi_ = mid;
}

std::pair<Rational, Rational> Field::theta_interval(const Rational& eps) const {
  std::lock_guard<std::mutex> lk(mu_);
  while (hi_ - lo_ > eps) refine_once_locked();
  return {lo_, hi_};
}

double Field::theta_double() const {
  auto [lo, hi] = theta_interval(Rational(1, 1000000000000L) / 2);
  return to_double((lo + hi) / 2);
}

bool Field::theta_is_root_of(const qpoly::Poly& q) const {
  // q divides min_poly, so its roots inside the isolating interval are
  // exactly {theta} or empty.
  std::lock_guard<std::mutex> lk(mu_);
  if (lo_ == hi_) return qpoly::eval(q, lo_) == 0;
  return qpoly::sturm_count(q, lo_, hi_) > 0;
}

bool Field::same_field(const Field& other) const {
  if (this == &other) return true;
  return spec_.min_poly == other.spec_.min_poly && spec_.lo == other.spec_.lo &&
         spec_.hi == other.spec_.hi;
}

}  // namespace nilclose
