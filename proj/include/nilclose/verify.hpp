#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nilclose/closure.hpp"
#include "nilclose/malcev.hpp"

namespace nilclose {

// Parameter points for sampling: an axis-aligned box with count points chosen
// by a grid, the Halton sequence, or seeded uniform draws.  point(k) is
// deterministic for every strategy, so samples can be generated in parallel
// and reproduced bit for bit.
struct SamplePlan {
  enum class Strategy { Grid, Halton, Random };

  std::vector<std::pair<double, double>> box;  // per-dimension [lo, hi]
  Strategy strategy = Strategy::Halton;
  size_t count = 0;
  uint64_t seed = 0;  // Random only

  void validate() const;
  std::vector<double> point(size_t k) const;
};

// Evaluates the map in floating point at every plan point and reduces each
// image mod UT(n, Z).  Entry overflow beyond 1e300 is reported with the
// offending parameter point.
std::vector<FloatReducedPoint> sample_orbit(const PolyMatrix& F,
                                            const SamplePlan& plan);

// Samples the predicted closure c * exp(h): a weak Malcev basis of h scaled
// to primitive integer vectors, second-kind coordinates drawn from the plan's
// box (one dimension per basis vector; [0, 2) covers every wrapped direction),
// then reduction.
std::vector<FloatReducedPoint> sample_predicted(const ClosureResult& result,
                                                const SamplePlan& plan);

// A plan for sample_predicted with the conventional [0, 2)^k box.
SamplePlan predicted_plan(const ClosureResult& result, size_t count,
                          SamplePlan::Strategy strategy, uint64_t seed);

// An infinite tolerance skips that direction entirely: the report shows 0 for
// its maximum and the direction counts as passed.
struct VerifyTolerances {
  double containment = 1e-6;  // orbit samples against the predicted set
  double density = 0.2;       // predicted samples against the orbit sample
};

struct VerifyReport {
  size_t orbit_count = 0;
  size_t predicted_count = 0;
  double max_orbit_to_predicted = 0;  // containment direction
  double max_predicted_to_orbit = 0;  // density direction
  double coverage = 0;  // orbit-hit fraction of predicted grid cells
  double delta = 0;
  double containment_tol = 0;
  double density_tol = 0;
  bool containment_pass = false;
  bool density_pass = false;
  bool pass = false;
};

// Two one-sided checks plus grid coverage at cell size delta.  Distances are
// quotient distances; nearest neighbors come from a wrapped grid prefilter
// refined with the exact search.  When analytic is nonnull the containment
// direction measures each orbit sample against the predicted coset itself
// (subspace residual of log(c^{-1} u gamma) over nearby lattice elements)
// rather than against the finite predicted sample.
VerifyReport hausdorff_check(const std::vector<FloatReducedPoint>& orbit,
                             const std::vector<FloatReducedPoint>& predicted,
                             double delta, const VerifyTolerances& tol,
                             const ClosureResult* analytic = nullptr);

// One row per point: the above-diagonal entries in row-major order.
std::string samples_csv(const std::vector<FloatReducedPoint>& points, int n);

}  // namespace nilclose
