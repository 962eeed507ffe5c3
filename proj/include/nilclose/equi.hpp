#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nilclose/closure.hpp"
#include "nilclose/expr.hpp"

namespace nilclose {

// Curve [0, inf) -> R^n given by one grammar expression in t per coordinate.
// ln1p is allowed here and nowhere else; derivatives are symbolic.
class NumericCurve {
 public:
  NumericCurve(const FieldPtr& f, std::vector<Expr> coords);
  static NumericCurve parse(const FieldPtr& f,
                            const std::vector<std::string>& coords);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Expr>& coords() const { return coords_; }

  std::vector<double> eval(double t) const;
  std::vector<double> derivative(double t) const;

  // <m, sigma(t)>; zero entries of m cost nothing.
  double phase(const std::vector<long>& m, double t) const;
  // t * <m, sigma'(t)>, the boundedness probe for the c.u.d. criterion.
  double scaled_phase_derivative(const std::vector<long>& m, double t) const;

 private:
  double theta_;
  std::vector<Expr> coords_;
  std::vector<Expr> dcoords_;
};

// (1/T) integral_0^T e^{2 pi i <m, sigma(t)>} dt to absolute accuracy tol.
// Panels are split until the sampled phase change per panel is below pi/4
// radians and the Richardson error estimate fits a proportional share of the
// tolerance; each (m, T) cell gets a budget of 1e7 evaluations, after which
// QuadratureError reports the error actually reached.
std::complex<double> weyl_sum(const NumericCurve& sigma,
                              const std::vector<long>& m, double T,
                              double tol = 1e-6);

// Exact verdict for polynomial curves: c.u.d., density in the torus, and the
// annihilator lattice M = {m : <m, c_alpha> = 0 for all exponents alpha > 0}
// coincide in content; cud = dense = (M = 0).
struct CudVerdict {
  bool cud = false;
  bool dense = false;
  std::vector<std::vector<Integer>> witnesses;  // Z-basis of M
};
CudVerdict cud_verdict_polynomial(const MonomialCurve& sigma);

struct WeylRow {
  std::vector<long> m;
  double T = 0;
  std::complex<double> W{0, 0};
  double abs_w = 0;
  bool ok = true;
  std::string error;  // quadrature failure message when !ok
};

struct ProbeRow {
  std::vector<long> m;
  double t = 0;
  double value = 0;  // t * <m, sigma'(t)>
};

// Heuristic tabulation: Weyl sums over a frequency/horizon grid plus the
// unboundedness probe sampled at t = 10^k.  The verdict thresholds are
// configuration, not mathematics.
struct WeylReport {
  std::vector<WeylRow> rows;
  std::vector<ProbeRow> probes;
  double decay_threshold = 0.02;
  bool cud_consistent = false;
  std::string verdict;  // "cud-consistent" or "not-cud-consistent"
};

WeylReport cud_numeric(const NumericCurve& sigma,
                       const std::vector<std::vector<long>>& ms,
                       const std::vector<double>& Ts, double tol = 1e-6);

// Header m,T,re_w,im_w,abs_w; the m column is semicolon-joined.
std::string weyl_report_csv(const WeylReport& report);

}  // namespace nilclose
