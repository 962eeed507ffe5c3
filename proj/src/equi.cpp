#include "nilclose/equi.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "nilclose/errors.hpp"

namespace nilclose {

namespace {

const std::vector<std::string>& tvar() {
  static const std::vector<std::string> v{"t"};
  return v;
}

}  // namespace

NumericCurve::NumericCurve(const FieldPtr& f, std::vector<Expr> coords)
    : theta_(f->theta_double()), coords_(std::move(coords)) {
  if (coords_.empty()) throw MathError("a curve needs at least one coordinate");
  for (const Expr& e : coords_) {
    for (const std::string& v : expression_vars(e))
      if (v != "t")
        throw MathError("curves use the single variable t, got '" + v + "'");
    dcoords_.push_back(differentiate(e, "t"));
  }
}

NumericCurve NumericCurve::parse(const FieldPtr& f,
                                 const std::vector<std::string>& coords) {
  std::vector<Expr> es;
  es.reserve(coords.size());
  for (const std::string& s : coords) es.push_back(parse_expression(s));
  return NumericCurve(f, std::move(es));
}

std::vector<double> NumericCurve::eval(double t) const {
  std::vector<double> vals{t};
  std::vector<double> out;
  out.reserve(coords_.size());
  for (const Expr& e : coords_)
    out.push_back(eval_expression(e, theta_, tvar(), vals));
  return out;
}

std::vector<double> NumericCurve::derivative(double t) const {
  std::vector<double> vals{t};
  std::vector<double> out;
  out.reserve(dcoords_.size());
  for (const Expr& e : dcoords_)
    out.push_back(eval_expression(e, theta_, tvar(), vals));
  return out;
}

double NumericCurve::phase(const std::vector<long>& m, double t) const {
  std::vector<double> vals{t};
  double acc = 0;
  for (size_t i = 0; i < coords_.size(); ++i)
    if (m[i] != 0)
      acc += static_cast<double>(m[i]) *
             eval_expression(coords_[i], theta_, tvar(), vals);
  return acc;
}

double NumericCurve::scaled_phase_derivative(const std::vector<long>& m,
                                             double t) const {
  std::vector<double> vals{t};
  double acc = 0;
  for (size_t i = 0; i < dcoords_.size(); ++i)
    if (m[i] != 0)
      acc += static_cast<double>(m[i]) *
             eval_expression(dcoords_[i], theta_, tvar(), vals);
  return t * acc;
}

namespace {

constexpr long kEvalBudget = 10'000'000;
constexpr double kPi = std::numbers::pi;

struct PhasePoint {
  double phi;  // phase in cycles
  std::complex<double> f;
};

struct Panel {
  double a, b;
  PhasePoint va, vm, vb;
  std::complex<double> S;  // Simpson estimate over [a, b]
};

struct Quad {
  const NumericCurve& sigma;
  const std::vector<long>& m;
  long evals = 0;

  PhasePoint at(double t) {
    ++evals;
    double phi = sigma.phase(m, t);
    // Reducing mod 1 keeps the exponential accurate for large phases.
    return {phi, std::polar(1.0, 2 * kPi * std::remainder(phi, 1.0))};
  }
};

std::complex<double> simpson(double a, double b, const PhasePoint& va,
                             const PhasePoint& vm, const PhasePoint& vb) {
  return (b - a) / 6.0 * (va.f + 4.0 * vm.f + vb.f);
}

}  // namespace

std::complex<double> weyl_sum(const NumericCurve& sigma,
                              const std::vector<long>& m, double T,
                              double tol) {
  if (static_cast<int>(m.size()) != sigma.dim())
    throw MathError("frequency vector length does not match the curve");
  bool nonzero = false;
  for (long c : m) nonzero |= c != 0;
  if (!nonzero) throw MathError("the Weyl criterion uses nonzero frequencies");
  if (!(T > 0)) throw MathError("the averaging horizon must be positive");
  if (!(tol > 0)) throw MathError("tolerance must be positive");

  Quad q{sigma, m};
  std::vector<Panel> work;
  {
    PhasePoint va = q.at(0), vm = q.at(T / 2), vb = q.at(T);
    work.push_back({0, T, va, vm, vb, simpson(0, T, va, vm, vb)});
  }

  std::complex<double> total{0, 0};
  double err_acc = 0;
  while (!work.empty()) {
    if (q.evals > kEvalBudget) {
      double pending = 0;
      for (const Panel& p : work) pending += p.b - p.a;
      throw QuadratureError(
          "oscillatory quadrature exhausted its evaluation budget",
          (err_acc + pending) / T);
    }
    Panel p = work.back();
    work.pop_back();

    double mid = (p.a + p.b) / 2;
    double m1 = (p.a + mid) / 2, m2 = (mid + p.b) / 2;
    PhasePoint v1 = q.at(m1), v2 = q.at(m2);
    std::complex<double> SL = simpson(p.a, mid, p.va, v1, p.vm);
    std::complex<double> SR = simpson(mid, p.b, p.vm, v2, p.vb);
    std::complex<double> S2 = SL + SR;
    double err = std::abs(S2 - p.S) / 15.0;
    double span = 2 * kPi *
                  (std::abs(v1.phi - p.va.phi) + std::abs(p.vm.phi - v1.phi) +
                   std::abs(v2.phi - p.vm.phi) + std::abs(p.vb.phi - v2.phi));
    bool smooth = span < kPi / 4;
    bool accurate = err <= tol * (p.b - p.a) / 2;
    if ((smooth && accurate) || p.b - p.a < T * 1e-14) {
      total += S2 + (S2 - p.S) / 15.0;
      err_acc += err;
    } else {
      work.push_back({mid, p.b, p.vm, v2, p.vb, SR});
      work.push_back({p.a, mid, p.va, v1, p.vm, SL});
    }
  }
  return total / T;
}

CudVerdict cud_verdict_polynomial(const MonomialCurve& sigma) {
  TorusClosure tc = torus_curve_closure(sigma);
  CudVerdict v;
  v.cud = v.dense = tc.dense;
  v.witnesses = integer_basis(tc.annihilator);
  return v;
}

WeylReport cud_numeric(const NumericCurve& sigma,
                       const std::vector<std::vector<long>>& ms,
                       const std::vector<double>& Ts, double tol) {
  if (ms.empty() || Ts.empty())
    throw MathError("the report needs at least one frequency and one horizon");
  WeylReport rep;
  for (const auto& m : ms)
    for (double T : Ts) {
      WeylRow row;
      row.m = m;
      row.T = T;
      try {
        row.W = weyl_sum(sigma, m, T, tol);
        row.abs_w = std::abs(row.W);
      } catch (const QuadratureError& e) {
        row.ok = false;
        row.error = e.what();
        row.W = {std::nan(""), std::nan("")};
        row.abs_w = std::nan("");
      }
      rep.rows.push_back(std::move(row));
    }

  for (const auto& m : ms)
    for (int k = 0; k <= 6; ++k) {
      double t = std::pow(10.0, k);
      rep.probes.push_back({m, t, sigma.scaled_phase_derivative(m, t)});
    }

  // Consistent when the longest horizon already decayed below the bar and did
  // not grow against the shortest one.  A failed cell disqualifies.
  bool ok = true;
  size_t nT = Ts.size();
  for (size_t i = 0; i < ms.size(); ++i) {
    const WeylRow& first = rep.rows[i * nT];
    const WeylRow& last = rep.rows[i * nT + nT - 1];
    if (!first.ok || !last.ok) {
      ok = false;
      break;
    }
    ok = ok && last.abs_w < rep.decay_threshold &&
         last.abs_w <= first.abs_w + 0.01;
  }
  rep.cud_consistent = ok;
  rep.verdict = ok ? "cud-consistent" : "not-cud-consistent";
  return rep;
}

std::string weyl_report_csv(const WeylReport& report) {
  std::string out = "m,T,re_w,im_w,abs_w\n";
  char buf[160];
  for (const WeylRow& r : report.rows) {
    std::string mcol;
    for (size_t i = 0; i < r.m.size(); ++i) {
      if (i) mcol += ';';
      mcol += std::to_string(r.m[i]);
    }
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g\n", mcol.c_str(),
                  r.T, r.W.real(), r.W.imag(), r.abs_w);
    out += buf;
  }
  return out;
}

}  // namespace nilclose
