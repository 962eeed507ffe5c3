#pragma once

#include <map>

#include "nilclose/linalg.hpp"

namespace nilclose {

// Sparse multivariate polynomial over Q(theta).  Exponent vectors have fixed
// length nvars; the map order makes iteration deterministic.  Total degree is
// capped to catch runaway symbolic computations.
class Polynomial {
 public:
  static constexpr int kDefaultDegreeCap = 16;

  Polynomial(const FieldPtr& f, int nvars, int degree_cap = kDefaultDegreeCap);
  static Polynomial constant(const FieldPtr& f, int nvars, const Scalar& c,
                             int degree_cap = kDefaultDegreeCap);
  static Polynomial variable(const FieldPtr& f, int nvars, int index,
                             int degree_cap = kDefaultDegreeCap);

  const FieldPtr& field() const { return field_; }
  int nvars() const { return nvars_; }
  int degree_cap() const { return cap_; }
  const std::map<std::vector<unsigned>, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  int total_degree() const;  // -1 for zero

  void add_term(const std::vector<unsigned>& exps, const Scalar& c);

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial pow(unsigned k) const;
  bool operator==(const Polynomial& o) const;

  Scalar eval(const ScalarVec& x) const;
  double eval_double(const std::vector<double>& x) const;

  std::string str(const std::vector<std::string>& var_names) const;

 private:
  void check_compat(const Polynomial& o) const;

  FieldPtr field_;
  int nvars_;
  int cap_;
  std::map<std::vector<unsigned>, Scalar> terms_;
};

}  // namespace nilclose
