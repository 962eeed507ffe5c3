#include "nilclose/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <thread>

#include "nilclose/errors.hpp"

namespace nilclose {

namespace {

int worker_count() {
  if (const char* env = std::getenv("NILCLOSE_THREADS")) {
    int k = std::atoi(env);
    if (k >= 1) return std::min(k, 256);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Contiguous chunks, one per worker.  fn writes to disjoint slots by index,
// so the result does not depend on the worker count.
void parallel_for(size_t n, const std::function<void(size_t, size_t)>& fn) {
  if (n == 0) return;
  size_t workers = static_cast<size_t>(worker_count());
  if (workers <= 1 || n < 512) {
    fn(0, n);
    return;
  }
  size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (size_t w = 0; w * chunk < n; ++w) {
    size_t b = w * chunk, e = std::min(n, b + chunk);
    threads.emplace_back([&fn, &errors, w, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

double radical_inverse(unsigned base, size_t k) {
  double inv = 1.0 / base, f = inv, r = 0;
  while (k) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

int superdiag_dim(int n) { return n * (n - 1) / 2; }

void flatten_into(const DMat& g, double* out) {
  int k = 0;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) out[k++] = g.at(i, j);
}

double wrap_gap(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

// Wrapped-grid prefilter for nearest neighbors among reduced points.  Hashes
// over the most spread-out axes only; the remaining axes still contribute to
// the candidate metric.
struct NeighborIndex {
  int d = 0;
  int m = 1;
  std::vector<int> axes;
  std::vector<double> coords;  // stride d
  std::vector<std::vector<int>> buckets;

  static NeighborIndex build(const std::vector<FloatReducedPoint>& pts, int n) {
    NeighborIndex idx;
    idx.d = superdiag_dim(n);
    idx.coords.resize(pts.size() * idx.d);
    for (size_t i = 0; i < pts.size(); ++i)
      flatten_into(pts[i].rep, &idx.coords[i * idx.d]);

    std::vector<std::pair<double, int>> spread(idx.d);
    for (int a = 0; a < idx.d; ++a) {
      double lo = 1e300, hi = -1e300;
      for (size_t i = 0; i < pts.size(); ++i) {
        double v = idx.coords[i * idx.d + a];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      spread[a] = {hi - lo, a};
    }
    std::stable_sort(spread.begin(), spread.end(), [](auto& x, auto& y) {
      return x.first > y.first;
    });
    for (int k = 0; k < idx.d && static_cast<int>(idx.axes.size()) < 3; ++k)
      if (spread[k].first > 0.05) idx.axes.push_back(spread[k].second);
    if (idx.axes.empty()) idx.axes.push_back(0);

    double per = std::pow(std::max(1.0, pts.size() / 4.0),
                          1.0 / static_cast<double>(idx.axes.size()));
    idx.m = std::clamp(static_cast<int>(per), 1, 64);
    size_t nb = 1;
    for (size_t a = 0; a < idx.axes.size(); ++a) nb *= idx.m;
    idx.buckets.resize(nb);
    for (size_t i = 0; i < pts.size(); ++i)
      idx.buckets[idx.bucket_of(&idx.coords[i * idx.d])].push_back(
          static_cast<int>(i));
    return idx;
  }

  int cell_of(double v) const {
    int c = static_cast<int>(std::floor(v * m));
    return std::clamp(c, 0, m - 1);
  }

  size_t bucket_of(const double* p) const {
    size_t b = 0;
    for (int a : axes) b = b * m + cell_of(p[a]);
    return b;
  }

  double dist2(const double* p, const double* q) const {
    double acc = 0;
    for (int a = 0; a < d; ++a) {
      double g = wrap_gap(p[a], q[a]);
      acc += g * g;
    }
    return acc;
  }

  // Smallest exact distance from p to any pool point, where exact(i) is the
  // quotient distance to pool point i.  Grid shells are scanned outward and
  // candidates refined in ascending surrogate order; the scan stops once the
  // scanned radius covers the best exact distance found, since every
  // unvisited point differs by at least r/m on some hashed axis.  A candidate
  // hiding behind a lattice fold (surrogate large, exact small) can only make
  // the result larger, never smaller, so a passing check stays sound.
  double nearest(const double* p, const std::function<double(int)>& exact) const {
    static constexpr int kMaxExact = 48;
    std::priority_queue<std::pair<double, int>,
                        std::vector<std::pair<double, int>>, std::greater<>>
        pending;  // surrogate distance squared
    double best = std::numeric_limits<double>::infinity();
    int evals = 0;
    std::vector<int> base(axes.size());
    for (size_t a = 0; a < axes.size(); ++a) base[a] = cell_of(p[axes[a]]);

    std::vector<int> off(axes.size());
    for (int r = 0;; ++r) {
      // Shell of Chebyshev radius r around the base cell, wrapped mod m.
      std::function<void(size_t, bool)> walk = [&](size_t a, bool boundary) {
        if (a == axes.size()) {
          if (!boundary && r != 0) return;
          size_t b = 0;
          for (size_t i = 0; i < axes.size(); ++i) {
            int c = ((base[i] + off[i]) % m + m) % m;
            b = b * m + c;
          }
          for (int pi : buckets[b])
            pending.emplace(dist2(p, &coords[static_cast<size_t>(pi) * d]), pi);
          return;
        }
        int span = std::min(r, m - 1);
        for (int o = -span; o <= span; ++o) {
          off[a] = o;
          walk(a + 1, boundary || std::abs(o) == r);
        }
      };
      walk(0, r == 0);
      while (!pending.empty() && evals < kMaxExact &&
             pending.top().first < best * best) {
        int pi = pending.top().second;
        pending.pop();
        ++evals;
        best = std::min(best, exact(pi));
      }
      if (static_cast<double>(r) / m >= best) break;
      // Once the shells wrap all the way around, every bucket was visited.
      if (2 * r + 1 >= m) break;
    }
    return best;
  }
};

// Max over queries of the nearest quotient distance into pool.  Per query the
// value is an upper bound on the true nearest distance, so the maximum only
// ever rounds up.
double one_sided_max(const std::vector<FloatReducedPoint>& queries,
                     const std::vector<FloatReducedPoint>& pool,
                     const NeighborIndex& pool_index) {
  std::vector<double> mins(queries.size(), 0.0);
  int d = pool_index.d;
  parallel_for(queries.size(), [&](size_t b, size_t e) {
    std::vector<double> q(d);
    for (size_t i = b; i < e; ++i) {
      flatten_into(queries[i].rep, q.data());
      mins[i] = pool_index.nearest(q.data(), [&](int c) {
        return quotient_distance(queries[i].rep, pool[c].rep);
      });
    }
  });
  double mx = 0;
  for (double v : mins) mx = std::max(mx, v);
  return mx;
}

// Orthonormal rows spanning the algebra, in flattened float coordinates.
std::vector<std::vector<double>> orthonormal_span(const Subalgebra& h) {
  std::vector<std::vector<double>> rows;
  size_t amb = 0;
  for (const ScalarVec& r : h.space.rows) {
    std::vector<double> v;
    v.reserve(r.size());
    for (const Scalar& c : r) v.push_back(c.to_double());
    amb = v.size();
    for (const auto& u : rows) {
      double dot = 0;
      for (size_t k = 0; k < amb; ++k) dot += u[k] * v[k];
      for (size_t k = 0; k < amb; ++k) v[k] -= dot * u[k];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-12) continue;
    for (double& x : v) x /= norm;
    rows.push_back(std::move(v));
  }
  return rows;
}

double residual_outside(const std::vector<std::vector<double>>& ortho,
                        const std::vector<double>& v) {
  double total = 0, inside = 0;
  for (double x : v) total += x * x;
  for (const auto& u : ortho) {
    double dot = 0;
    for (size_t k = 0; k < v.size(); ++k) dot += u[k] * v[k];
    inside += dot * dot;
  }
  return std::sqrt(std::max(0.0, total - inside));
}

// Distance surrogate from a reduced point to the coset c exp(h) mod the
// lattice: subspace residual of log(c^{-1} u gamma) minimized over lattice
// elements near the reduced difference.  Exact (up to rounding) at zero; a
// local surrogate elsewhere.
struct CosetResidual {
  DMat c_inv;
  std::vector<std::vector<double>> ortho;
  int n = 0;
  int window = 1;

  static CosetResidual build(const ClosureResult& analytic) {
    CosetResidual r;
    r.n = analytic.closed.base.n();
    r.c_inv = dinv_unipotent(to_dmat(analytic.closed.base));
    r.ortho = orthonormal_span(analytic.closed.algebra);
    r.window = r.n <= 3 ? 3 : (r.n == 4 ? 2 : 1);
    return r;
  }

  double eval(const DMat& u) const {
    DMat v0 = reduce_mod_lattice_float(dmul(c_inv, u)).rep;
    int d = superdiag_dim(n);
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pos.emplace_back(i, j);

    double best = 1e300;
    std::vector<int> off(d, 0);
    std::vector<double> flat(d);
    // Shells of growing Chebyshev radius; members of the coset exit at the
    // identity shell with a residual at rounding level.
    for (int r = 0; r <= window && best > 1e-12; ++r) {
      std::function<void(size_t, bool)> walk = [&](size_t a, bool boundary) {
        if (best <= 1e-12) return;
        if (a == pos.size()) {
          if (boundary != (r == 0)) {
            DMat g = DMat::identity(n);
            for (size_t k = 0; k < pos.size(); ++k)
              g.at(pos[k].first, pos[k].second) = off[k];
            DMat L = dlog_unip(dmul(v0, g));
            flatten_into(L, flat.data());
            best = std::min(best, residual_outside(ortho, flat));
          }
          return;
        }
        for (int o = -r; o <= r; ++o) {
          off[a] = o;
          walk(a + 1, boundary || std::abs(o) == r);
        }
      };
      walk(0, false);
    }
    return best;
  }
};

size_t cell_key(const double* p, int d, double delta) {
  size_t m = std::max<size_t>(1, static_cast<size_t>(std::floor(1.0 / delta)));
  size_t key = 0;
  for (int a = 0; a < d; ++a) {
    size_t c = static_cast<size_t>(std::floor(p[a] / delta));
    key = key * m + std::min(c, m - 1);
  }
  return key;
}

}  // namespace

void SamplePlan::validate() const {
  if (count < 1) throw MathError("sample plan needs at least one point");
  if (box.empty()) throw MathError("sample plan needs a nonempty box");
  for (const auto& [lo, hi] : box)
    if (!(lo <= hi)) throw MathError("sample box has lo > hi");
}

std::vector<double> SamplePlan::point(size_t k) const {
  static const unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19};
  size_t d = box.size();
  if (d > 8) throw MathError("sample plans support at most 8 dimensions");
  std::vector<double> u(d);
  switch (strategy) {
    case Strategy::Grid: {
      size_t m = 1;
      while (static_cast<double>(std::pow(m, d)) < static_cast<double>(count))
        ++m;
      size_t idx = k;
      for (size_t a = 0; a < d; ++a) {
        u[a] = (static_cast<double>(idx % m) + 0.5) / static_cast<double>(m);
        idx /= m;
      }
      break;
    }
    case Strategy::Halton:
      for (size_t a = 0; a < d; ++a) u[a] = radical_inverse(kBases[a], k + 1);
      break;
    case Strategy::Random:
      for (size_t a = 0; a < d; ++a)
        u[a] = unit_double(splitmix64(seed ^ splitmix64(k * d + a + 1)));
      break;
  }
  std::vector<double> out(d);
  for (size_t a = 0; a < d; ++a)
    out[a] = box[a].first + u[a] * (box[a].second - box[a].first);
  return out;
}

std::vector<FloatReducedPoint> sample_orbit(const PolyMatrix& F,
                                            const SamplePlan& plan) {
  plan.validate();
  if (static_cast<int>(plan.box.size()) != F.nvars())
    throw MathError("plan dimension does not match the map's variables");
  FloatPolyMatrix ff(F);
  int n = F.n();
  std::vector<FloatReducedPoint> out(plan.count);
  parallel_for(plan.count, [&](size_t b, size_t e) {
    std::vector<double> entries;
    for (size_t k = b; k < e; ++k) {
      ff.eval(plan.point(k), entries);
      DMat g(n);
      g.a = entries;
      out[k] = reduce_mod_lattice_float(g);
    }
  });
  return out;
}

SamplePlan predicted_plan(const ClosureResult& result, size_t count,
                          SamplePlan::Strategy strategy, uint64_t seed) {
  SamplePlan plan;
  plan.count = count;
  plan.strategy = strategy;
  plan.seed = seed;
  size_t k = result.closed.algebra.space.rank();
  plan.box.assign(std::max<size_t>(k, 1), {0.0, 2.0});
  if (k == 0) plan.box.clear();
  return plan;
}

std::vector<FloatReducedPoint> sample_predicted(const ClosureResult& result,
                                                const SamplePlan& plan) {
  const Subalgebra& h = result.closed.algebra;
  int n = h.group.n;
  size_t dim = h.space.rank();
  if (dim == 0) {
    // A single point; the plan fixes only how many copies are reported.
    if (plan.count < 1) throw MathError("sample plan needs at least one point");
    FloatReducedPoint p = reduce_mod_lattice_float(to_dmat(result.closed.base));
    return std::vector<FloatReducedPoint>(plan.count, p);
  }
  plan.validate();
  if (plan.box.size() != dim)
    throw MathError("plan dimension does not match the closure's algebra");

  // Weak Malcev basis of the algebra, each vector scaled to a primitive
  // integer vector so that [0, 2) in each coordinate wraps every direction.
  std::vector<DMat> xi;
  for (const NilMatrix& x : weak_malcev_of(h)) {
    ScalarVec flat = x.flatten();
    Integer den(1), num(0);
    for (const Scalar& c : flat) {
      if (!c.is_rational())
        throw MathError("predicted sampling needs a rational algebra; "
                        "rationalize the closure first");
      den = lcm(den, c.rational_value().get_den());
    }
    std::vector<Integer> iv;
    for (const Scalar& c : flat) {
      Rational r = c.rational_value() * Rational(den);
      iv.push_back(r.get_num());
      num = gcd(num, iv.back());
    }
    if (num == 0) num = 1;
    DMat b(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rational r(iv[k++], num);
        r.canonicalize();
        b.at(i, j) = to_double(r);
      }
    xi.push_back(b);
  }

  DMat base = to_dmat(result.closed.base);
  std::vector<FloatReducedPoint> out(plan.count);
  parallel_for(plan.count, [&](size_t b, size_t e) {
    for (size_t k = b; k < e; ++k) {
      std::vector<double> s = plan.point(k);
      DMat g = base;
      for (size_t i = 0; i < xi.size(); ++i) {
        DMat scaled = xi[i];
        for (double& v : scaled.a) v *= s[i];
        g = dmul(g, dexp_nil(scaled));
      }
      out[k] = reduce_mod_lattice_float(g);
    }
  });
  return out;
}

VerifyReport hausdorff_check(const std::vector<FloatReducedPoint>& orbit,
                             const std::vector<FloatReducedPoint>& predicted,
                             double delta, const VerifyTolerances& tol,
                             const ClosureResult* analytic) {
  if (orbit.empty() || predicted.empty())
    throw MathError("both sample sets must be nonempty");
  if (!(delta > 0 && delta <= 1))
    throw MathError("grid cell size must lie in (0, 1]");
  int n = orbit.front().rep.n;
  int d = superdiag_dim(n);

  VerifyReport rep;
  rep.orbit_count = orbit.size();
  rep.predicted_count = predicted.size();
  rep.delta = delta;
  rep.containment_tol = tol.containment;
  rep.density_tol = tol.density;

  if (std::isinf(tol.density)) {
    rep.max_predicted_to_orbit = 0;
  } else {
    NeighborIndex orbit_index = NeighborIndex::build(orbit, n);
    rep.max_predicted_to_orbit = one_sided_max(predicted, orbit, orbit_index);
  }

  if (std::isinf(tol.containment)) {
    rep.max_orbit_to_predicted = 0;
  } else if (analytic) {
    bool full = analytic->closed.algebra.space ==
                analytic->closed.algebra.group.algebra;
    if (full) {
      rep.max_orbit_to_predicted = 0;
    } else {
      CosetResidual res = CosetResidual::build(*analytic);
      std::vector<double> vals(orbit.size());
      parallel_for(orbit.size(), [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) vals[i] = res.eval(orbit[i].rep);
      });
      double mx = 0;
      for (double v : vals) mx = std::max(mx, v);
      rep.max_orbit_to_predicted = mx;
    }
  } else {
    NeighborIndex pred_index = NeighborIndex::build(predicted, n);
    rep.max_orbit_to_predicted = one_sided_max(orbit, predicted, pred_index);
  }

  std::vector<char> orbit_cells, predicted_cells;
  size_t m = std::max<size_t>(1, static_cast<size_t>(std::floor(1.0 / delta)));
  size_t ncells = 1;
  for (int a = 0; a < d; ++a) {
    if (ncells > (size_t(1) << 40) / m)
      throw MathError("grid cell size too small for this dimension");
    ncells *= m;
  }
  orbit_cells.assign(ncells, 0);
  predicted_cells.assign(ncells, 0);
  std::vector<double> flat(d);
  for (const FloatReducedPoint& p : orbit) {
    flatten_into(p.rep, flat.data());
    orbit_cells[cell_key(flat.data(), d, delta)] = 1;
  }
  for (const FloatReducedPoint& p : predicted) {
    flatten_into(p.rep, flat.data());
    predicted_cells[cell_key(flat.data(), d, delta)] = 1;
  }
  size_t hit = 0, want = 0;
  for (size_t c = 0; c < ncells; ++c) {
    want += predicted_cells[c];
    hit += predicted_cells[c] & orbit_cells[c];
  }
  rep.coverage = want ? static_cast<double>(hit) / static_cast<double>(want) : 1.0;

  rep.containment_pass = rep.max_orbit_to_predicted <= tol.containment;
  rep.density_pass = rep.max_predicted_to_orbit <= tol.density;
  rep.pass = rep.containment_pass && rep.density_pass;
  return rep;
}

std::string samples_csv(const std::vector<FloatReducedPoint>& points, int n) {
  std::string out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!out.empty()) out += ',';
      out += "x" + std::to_string(i) + "_" + std::to_string(j);
    }
  out += '\n';
  char buf[64];
  int d = superdiag_dim(n);
  std::vector<double> flat(d);
  for (const FloatReducedPoint& p : points) {
    flatten_into(p.rep, flat.data());
    for (int a = 0; a < d; ++a) {
      std::snprintf(buf, sizeof buf, a + 1 == d ? "%.17g\n" : "%.17g,", flat[a]);
      out += buf;
    }
  }
  return out;
}

}  // namespace nilclose
