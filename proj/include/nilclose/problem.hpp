#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilclose/equi.hpp"
#include "nilclose/verify.hpp"

namespace nilclose {

// Tunables read from the input file's "options" object.  Command-line flags
// override individual fields after parsing.
struct ProblemOptions {
  std::vector<std::vector<long>> ms;  // frequency vectors; empty -> defaults
  std::vector<double> horizons;       // T values; empty -> {1e2, 1e3, 1e4}
  double quadrature_tol = 1e-6;
  std::optional<SamplePlan> plan;  // parameter sampling for orbit points
  size_t predicted_count = 0;      // 0 -> same as plan count
  double delta = 0.125;            // coverage cell size
  VerifyTolerances tolerances;
  bool analytic_containment = true;
};

// One parsed and validated input file.  Which payloads must be present
// depends on the command; parsing only checks internal consistency.
//
// Schema (docs/problem.schema.json): rationals are "p/q" strings, scalars and
// map entries are expression strings over the symbol theta, the group is
// {"n": n} (full upper-triangular) or {"n": n, "algebra_basis": [...]},
// vectors over the algebra are flattened above-diagonal rows in position
// order.
struct ProblemFile {
  FieldPtr field;
  std::optional<GroupSpec> group;
  std::optional<Subalgebra> subalgebra;
  std::optional<PolyMatrix> map;
  std::vector<std::string> map_vars;  // map variables, first-appearance order
  std::optional<NumericCurve> curve;
  std::optional<MonomialCurve> monomials;
  ProblemOptions options;
  std::string description;
  std::string command;  // suggested subcommand; documentation only

  // Throws ParseError.  Messages carry the JSON path of the offending value;
  // line/column refer to the failing expression or to the JSON text itself.
  static ProblemFile parse_text(const std::string& text);
};

// First count nonzero integer vectors of the given dimension whose first
// nonzero entry is positive, ordered by (squared norm, lexicographic).
std::vector<std::vector<long>> default_frequencies(int dim, size_t count);

// Output serializers.  Every object carries "format": 1 and passes
// check_output_shape.
nlohmann::json closure_result_json(const ClosureResult& r);
nlohmann::json subalgebra_json(const Subalgebra& h);
nlohmann::json malcev_basis_json(const MalcevBasis& B);
nlohmann::json weyl_report_json(const WeylReport& r);
// Exact torus verdict for integer-exponent curves: cud/dense/witnesses.
nlohmann::json exact_curve_json(const MonomialCurve& sigma);
// Limit coset of a general monomial curve as t -> infinity.
nlohmann::json nearest_coset_json(const MonomialCurve& sigma);
nlohmann::json verify_report_json(const VerifyReport& rep,
                                  const ClosureResult& closure);

// Structural self-check run on every object before it is printed: exact key
// set and JSON types for the shape at hand.  Throws MathError on mismatch.
void check_output_shape(const nlohmann::json& j);

// Bundled demonstration inputs.
std::vector<std::string> example_names();
std::string example_text(const std::string& name);  // pretty JSON

}  // namespace nilclose
