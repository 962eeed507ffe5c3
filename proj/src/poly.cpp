#include "nilclose/poly.hpp"

#include <cmath>
#include <numeric>

#include "nilclose/errors.hpp"

namespace nilclose {

Polynomial::Polynomial(const FieldPtr& f, int nvars, int degree_cap)
    : field_(f), nvars_(nvars), cap_(degree_cap) {
  if (!f) throw MathError("null field");
  if (nvars < 0) throw MathError("negative variable count");
}

Polynomial Polynomial::constant(const FieldPtr& f, int nvars, const Scalar& c,
                                int degree_cap) {
  Polynomial p(f, nvars, degree_cap);
  p.add_term(std::vector<unsigned>(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(const FieldPtr& f, int nvars, int index,
                                int degree_cap) {
  if (index < 0 || index >= nvars) throw MathError("variable index out of range");
  Polynomial p(f, nvars, degree_cap);
  std::vector<unsigned> e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Scalar::one(f));
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          terms_.begin()->first == std::vector<unsigned>(nvars_, 0));
}

Scalar Polynomial::constant_term() const {
  auto it = terms_.find(std::vector<unsigned>(nvars_, 0));
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = std::accumulate(e.begin(), e.end(), 0);
    d = std::max(d, t);
  }
  return d;
}

void Polynomial::add_term(const std::vector<unsigned>& exps, const Scalar& c) {
  if (static_cast<int>(exps.size()) != nvars_)
    throw MathError("exponent vector length mismatch");
  if (std::accumulate(exps.begin(), exps.end(), 0u) > static_cast<unsigned>(cap_))
    throw MathError("polynomial degree cap exceeded (cap " + std::to_string(cap_) + ")");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::check_compat(const Polynomial& o) const {
  if (nvars_ != o.nvars_) throw MathError("polynomial variable count mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_compat(o);
  Polynomial r = *this;
  r.cap_ = std::max(cap_, o.cap_);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_compat(o);
  Polynomial r(field_, nvars_, std::max(cap_, o.cap_));
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<unsigned> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(field_, nvars_, cap_);
  for (const auto& [e, a] : terms_) r.add_term(e, a * c);
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = constant(field_, nvars_, Scalar::one(field_), cap_);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [e, c] : terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

Scalar Polynomial::eval(const ScalarVec& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw MathError("evaluation point has wrong dimension");
  Scalar acc = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int i = 0; i < nvars_; ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

double Polynomial::eval_double(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw MathError("evaluation point has wrong dimension");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int i = 0; i < nvars_; ++i)
      if (e[i]) t *= std::pow(x[i], static_cast<int>(e[i]));
    acc += t;
  }
  return acc;
}

std::string Polynomial::str(const std::vector<std::string>& var_names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += var_names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff = c.str();
    if (mono.empty()) s += coeff;
    else if (coeff == "1") s += mono;
    else if (coeff.find(' ') != std::string::npos)
      s += "(" + coeff + ")*" + mono;
    else
      s += coeff + "*" + mono;
  }
  return s;
}

}  // namespace nilclose
