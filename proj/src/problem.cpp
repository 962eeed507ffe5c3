#include "nilclose/problem.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "nilclose/errors.hpp"
#include "nilclose/expr.hpp"

namespace nilclose {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg, 0, 0);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void require_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
}

const json& need(const json& j, const char* key, const std::string& path) {
  require_object(j, path);
  auto it = j.find(key);
  if (it == j.end())
    fail(path, "missing required key \"" + std::string(key) + "\"");
  return *it;
}

void reject_unknown_keys(const json& j,
                         std::initializer_list<const char*> known,
                         const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(path + "." + it.key(), "unknown key");
  }
}

std::string str_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

long long int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long long>();
}

double num_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

bool bool_at(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string idx(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Accepts a "p/q" string or a plain JSON integer.
Rational rational_at(const json& j, const std::string& path) {
  if (j.is_number_integer())
    return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) fail(path, "expected a rational \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const MathError& e) {
    fail(path, e.what());
  }
}

Integer integer_at(const json& j, const std::string& path) {
  Rational q = rational_at(j, path);
  if (q.get_den() != 1) fail(path, "expected an integer");
  return q.get_num();
}

// Constant expression over theta; variables are rejected here.
Scalar scalar_at(const FieldPtr& f, const json& j, const std::string& path) {
  std::string s = str_at(j, path);
  try {
    Expr e = parse_expression(s);
    return expression_to_polynomial(e, f, {}).constant_term();
  } catch (const ParseError& pe) {
    throw ParseError(path + ": " + pe.what(), pe.line, pe.column);
  } catch (const MathError& me) {
    fail(path, me.what());
  }
}

ScalarVec scalar_vec_at(const FieldPtr& f, const json& j, size_t len,
                        const std::string& path) {
  require_array(j, path);
  if (j.size() != len)
    fail(path, "expected " + std::to_string(len) + " entries, got " +
                   std::to_string(j.size()));
  ScalarVec v;
  v.reserve(len);
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(scalar_at(f, j[i], idx(path, i)));
  return v;
}

FieldPtr field_at(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, {"min_poly", "root_interval"}, path);
  FieldSpec spec;
  const json& mp = need(j, "min_poly", path);
  require_array(mp, path + ".min_poly");
  if (mp.size() < 2) fail(path + ".min_poly", "needs degree at least 1");
  for (size_t i = 0; i < mp.size(); ++i)
    spec.min_poly.push_back(integer_at(mp[i], idx(path + ".min_poly", i)));
  const json& iv = need(j, "root_interval", path);
  require_array(iv, path + ".root_interval");
  if (iv.size() != 2) fail(path + ".root_interval", "expected [lo, hi]");
  spec.lo = rational_at(iv[0], path + ".root_interval[0]");
  spec.hi = rational_at(iv[1], path + ".root_interval[1]");
  return Field::make(spec);
}

GroupSpec group_at(const FieldPtr& f, const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, {"n", "algebra_basis"}, path);
  long long n = int_at(need(j, "n", path), path + ".n");
  if (n < 1 || n > 32) fail(path + ".n", "n must be between 1 and 32");
  auto it = j.find("algebra_basis");
  if (it == j.end() || (it->is_string() && *it == "full_ut"))
    return GroupSpec::full_ut(f, static_cast<int>(n));
  const std::string bpath = path + ".algebra_basis";
  require_array(*it, bpath);
  size_t amb = static_cast<size_t>(ambient_dim(static_cast<int>(n)));
  ScalarMat rows;
  for (size_t i = 0; i < it->size(); ++i)
    rows.push_back(scalar_vec_at(f, (*it)[i], amb, idx(bpath, i)));
  return GroupSpec::make(f, static_cast<int>(n), std::move(rows));
}

// Either a bare array of flattened rows or {"basis": [...]} (the shape
// rationalize prints, so outputs feed back in).
Subalgebra subalgebra_at(const GroupSpec& g, const json& j,
                         const std::string& path) {
  const json* basis = &j;
  std::string bpath = path;
  if (j.is_object()) {
    reject_unknown_keys(j, {"basis", "n", "format"}, path);
    if (auto it = j.find("format"); it != j.end())
      if (int_at(*it, path + ".format") != 1)
        fail(path + ".format", "unsupported format");
    if (auto it = j.find("n"); it != j.end())
      if (int_at(*it, path + ".n") != g.n)
        fail(path + ".n", "does not match group n");
    basis = &need(j, "basis", path);
    bpath = path + ".basis";
  }
  require_array(*basis, bpath);
  size_t amb = static_cast<size_t>(ambient_dim(g.n));
  ScalarMat rows;
  for (size_t i = 0; i < basis->size(); ++i)
    rows.push_back(scalar_vec_at(g.field, (*basis)[i], amb, idx(bpath, i)));
  return Subalgebra::make(g, std::move(rows));
}

PolyMatrix map_at(const GroupSpec& g, const json& j,
                  std::vector<std::string>& vars_out,
                  const std::string& path) {
  require_array(j, path);
  int n = g.n;
  if (static_cast<int>(j.size()) != n)
    fail(path, "expected " + std::to_string(n) + " rows");
  std::vector<Expr> entries;
  std::vector<std::string> vars;
  for (int r = 0; r < n; ++r) {
    const json& row = j[r];
    require_array(row, idx(path, r));
    if (static_cast<int>(row.size()) != n)
      fail(idx(path, r), "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) {
      const std::string epath = idx(path, r) + "[" + std::to_string(c) + "]";
      std::string s = str_at(row[c], epath);
      try {
        entries.push_back(parse_expression(s));
      } catch (const ParseError& pe) {
        throw ParseError(epath + ": " + pe.what(), pe.line, pe.column);
      }
      for (const std::string& v : expression_vars(entries.back()))
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
          vars.push_back(v);
    }
  }
  PolyMatrix F(g.field, n, static_cast<int>(vars.size()));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const std::string epath = idx(path, r) + "[" + std::to_string(c) + "]";
      try {
        F.at(r, c) =
            expression_to_polynomial(entries[r * n + c], g.field, vars);
      } catch (const MathError& me) {
        fail(epath, me.what());
      }
    }
  if (!F.is_unipotent_shape())
    fail(path, "map entries must be 1 on the diagonal and 0 below it");
  vars_out = std::move(vars);
  return F;
}

NumericCurve curve_at(const FieldPtr& f, const json& j,
                      const std::string& path) {
  require_array(j, path);
  if (j.empty()) fail(path, "expected at least one coordinate");
  std::vector<Expr> coords;
  for (size_t i = 0; i < j.size(); ++i) {
    std::string s = str_at(j[i], idx(path, i));
    try {
      coords.push_back(parse_expression(s));
    } catch (const ParseError& pe) {
      throw ParseError(idx(path, i) + ": " + pe.what(), pe.line, pe.column);
    }
  }
  try {
    return NumericCurve(f, std::move(coords));
  } catch (const MathError& me) {
    fail(path, me.what());
  }
}

MonomialCurve monomials_at(const FieldPtr& f, const json& j,
                           const std::string& path) {
  require_array(j, path);
  if (j.empty()) fail(path, "expected at least one term");
  int dim = -1;
  std::vector<MonomialTerm> terms;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    const std::string tpath = idx(path, i);
    require_object(t, tpath);
    reject_unknown_keys(t, {"exponent", "coefficient"}, tpath);
    MonomialTerm term;
    term.exponent = rational_at(need(t, "exponent", tpath), tpath + ".exponent");
    const json& coeff = need(t, "coefficient", tpath);
    require_array(coeff, tpath + ".coefficient");
    if (dim < 0) {
      dim = static_cast<int>(coeff.size());
      if (dim < 1) fail(tpath + ".coefficient", "expected at least one entry");
    }
    term.coefficient = scalar_vec_at(f, coeff, static_cast<size_t>(dim),
                                     tpath + ".coefficient");
    terms.push_back(std::move(term));
  }
  return MonomialCurve::make(f, dim, std::move(terms));
}

SamplePlan plan_at(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j, {"box", "strategy", "count", "seed"}, path);
  SamplePlan plan;
  const json& box = need(j, "box", path);
  require_array(box, path + ".box");
  for (size_t i = 0; i < box.size(); ++i) {
    const json& pair = box[i];
    const std::string ppath = idx(path + ".box", i);
    require_array(pair, ppath);
    if (pair.size() != 2) fail(ppath, "expected [lo, hi]");
    double lo = num_at(pair[0], ppath + "[0]");
    double hi = num_at(pair[1], ppath + "[1]");
    if (!(lo <= hi)) fail(ppath, "needs lo <= hi");
    plan.box.emplace_back(lo, hi);
  }
  if (auto it = j.find("strategy"); it != j.end()) {
    std::string s = str_at(*it, path + ".strategy");
    if (s == "grid")
      plan.strategy = SamplePlan::Strategy::Grid;
    else if (s == "halton")
      plan.strategy = SamplePlan::Strategy::Halton;
    else if (s == "random")
      plan.strategy = SamplePlan::Strategy::Random;
    else
      fail(path + ".strategy", "expected \"grid\", \"halton\" or \"random\"");
  }
  long long count = int_at(need(j, "count", path), path + ".count");
  if (count < 1) fail(path + ".count", "needs a positive count");
  plan.count = static_cast<size_t>(count);
  if (auto it = j.find("seed"); it != j.end()) {
    long long seed = int_at(*it, path + ".seed");
    if (seed < 0) fail(path + ".seed", "needs a nonnegative seed");
    plan.seed = static_cast<uint64_t>(seed);
  }
  return plan;
}

void options_at(const json& j, ProblemOptions& o, const std::string& path) {
  require_object(j, path);
  reject_unknown_keys(j,
                      {"ms", "Ts", "tol", "plan", "predicted_count", "delta",
                       "containment_tol", "density_tol",
                       "analytic_containment"},
                      path);
  if (auto it = j.find("ms"); it != j.end()) {
    require_array(*it, path + ".ms");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& mv = (*it)[i];
      const std::string mpath = idx(path + ".ms", i);
      require_array(mv, mpath);
      if (mv.empty()) fail(mpath, "expected at least one entry");
      std::vector<long> m;
      for (size_t k = 0; k < mv.size(); ++k)
        m.push_back(static_cast<long>(int_at(mv[k], idx(mpath, k))));
      o.ms.push_back(std::move(m));
    }
  }
  if (auto it = j.find("Ts"); it != j.end()) {
    require_array(*it, path + ".Ts");
    for (size_t i = 0; i < it->size(); ++i) {
      double T = num_at((*it)[i], idx(path + ".Ts", i));
      if (!(T > 0)) fail(idx(path + ".Ts", i), "needs a positive horizon");
      o.horizons.push_back(T);
    }
  }
  if (auto it = j.find("tol"); it != j.end()) {
    o.quadrature_tol = num_at(*it, path + ".tol");
    if (!(o.quadrature_tol > 0)) fail(path + ".tol", "needs a positive value");
  }
  if (auto it = j.find("plan"); it != j.end())
    o.plan = plan_at(*it, path + ".plan");
  if (auto it = j.find("predicted_count"); it != j.end()) {
    long long c = int_at(*it, path + ".predicted_count");
    if (c < 1) fail(path + ".predicted_count", "needs a positive count");
    o.predicted_count = static_cast<size_t>(c);
  }
  if (auto it = j.find("delta"); it != j.end()) {
    o.delta = num_at(*it, path + ".delta");
    if (!(o.delta > 0 && o.delta <= 1))
      fail(path + ".delta", "needs a value in (0, 1]");
  }
  if (auto it = j.find("containment_tol"); it != j.end()) {
    o.tolerances.containment = num_at(*it, path + ".containment_tol");
    if (!(o.tolerances.containment > 0))
      fail(path + ".containment_tol", "needs a positive value");
  }
  if (auto it = j.find("density_tol"); it != j.end()) {
    o.tolerances.density = num_at(*it, path + ".density_tol");
    if (!(o.tolerances.density > 0))
      fail(path + ".density_tol", "needs a positive value");
  }
  if (auto it = j.find("analytic_containment"); it != j.end())
    o.analytic_containment = bool_at(*it, path + ".analytic_containment");
}

const char* const kCommands[] = {"closure-orbit", "closure-polymap",
                                 "rationalize",   "malcev",
                                 "equi",          "verify",
                                 "examples"};

json scalar_vec_json(const ScalarVec& v) {
  json a = json::array();
  for (const Scalar& s : v) a.push_back(s.str());
  return a;
}

json scalar_rows_json(const ScalarMat& rows) {
  json a = json::array();
  for (const ScalarVec& r : rows) a.push_back(scalar_vec_json(r));
  return a;
}

json unipotent_json(const UnipotentElement& g) {
  json a = json::array();
  for (int i = 0; i < g.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < g.n(); ++j) row.push_back(g.mat().at(i, j).str());
    a.push_back(std::move(row));
  }
  return a;
}

enum class JT { Int, Num, Bool, Str, Arr, Obj };

bool type_matches(const json& v, JT t) {
  switch (t) {
    case JT::Int: return v.is_number_integer();
    case JT::Num: return v.is_number();
    case JT::Bool: return v.is_boolean();
    case JT::Str: return v.is_string();
    case JT::Arr: return v.is_array();
    case JT::Obj: return v.is_object();
  }
  return false;
}

void require_shape(const json& j,
                   std::initializer_list<std::pair<const char*, JT>> keys,
                   const char* what) {
  if (!j.is_object() || j.size() != keys.size())
    throw MathError(std::string("output self-check failed: wrong key set in ") +
                    what);
  for (const auto& [k, t] : keys) {
    auto it = j.find(k);
    if (it == j.end() || !type_matches(*it, t))
      throw MathError(std::string("output self-check failed: key \"") + k +
                      "\" in " + what);
  }
}

}  // namespace

ProblemFile ProblemFile::parse_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string("invalid JSON: ") + e.what(), line, col);
  }
  require_object(j, "$");
  reject_unknown_keys(j,
                      {"format", "description", "command", "field", "group",
                       "subalgebra", "map", "curve", "monomials", "options"},
                      "$");
  if (auto it = j.find("format"); it != j.end())
    if (int_at(*it, "$.format") != 1) fail("$.format", "unsupported format");

  ProblemFile p;
  if (auto it = j.find("description"); it != j.end())
    p.description = str_at(*it, "$.description");
  if (auto it = j.find("command"); it != j.end()) {
    p.command = str_at(*it, "$.command");
    if (std::find_if(std::begin(kCommands), std::end(kCommands),
                     [&](const char* c) { return p.command == c; }) ==
        std::end(kCommands))
      fail("$.command", "unknown command \"" + p.command + "\"");
  }
  if (auto it = j.find("field"); it != j.end())
    p.field = field_at(*it, "$.field");
  else
    p.field = Field::make({{0, 1}, Rational(-1), Rational(1)});

  if (auto it = j.find("group"); it != j.end())
    p.group = group_at(p.field, *it, "$.group");
  if (auto it = j.find("subalgebra"); it != j.end()) {
    if (!p.group) fail("$.subalgebra", "requires a group");
    p.subalgebra = subalgebra_at(*p.group, *it, "$.subalgebra");
  }
  if (auto it = j.find("map"); it != j.end()) {
    if (!p.group) fail("$.map", "requires a group");
    p.map = map_at(*p.group, *it, p.map_vars, "$.map");
  }
  if (auto it = j.find("curve"); it != j.end())
    p.curve = curve_at(p.field, *it, "$.curve");
  if (auto it = j.find("monomials"); it != j.end())
    p.monomials = monomials_at(p.field, *it, "$.monomials");
  if (auto it = j.find("options"); it != j.end())
    options_at(*it, p.options, "$.options");
  return p;
}

std::vector<std::vector<long>> default_frequencies(int dim, size_t count) {
  if (dim < 1) throw MathError("frequency vectors need dimension at least 1");
  if (dim > 8) throw MathError("default frequencies support dimension up to 8");
  std::vector<std::pair<long, std::vector<long>>> found;  // (norm2, vector)
  auto enumerate = [&](long R) {
    found.clear();
    std::vector<long> v(dim, -R);
    while (true) {
      int first = -1;
      long norm2 = 0;
      for (int i = 0; i < dim; ++i) {
        if (v[i] != 0 && first < 0) first = i;
        norm2 += v[i] * v[i];
      }
      if (first >= 0 && v[first] > 0) found.emplace_back(norm2, v);
      int i = dim - 1;
      while (i >= 0 && v[i] == R) v[i--] = -R;
      if (i < 0) break;
      ++v[i];
    }
  };
  // Vectors outside the max-norm-R cube have squared norm > R^2 + 2R, so the
  // cube is complete for every squared norm up to that bound.
  for (long R = 1;; ++R) {
    enumerate(R);
    long complete = R * R + 2 * R;
    size_t within = 0;
    for (const auto& [n2, v] : found)
      if (n2 <= complete) ++within;
    if (within >= count || found.size() >= 100000) break;
  }
  std::sort(found.begin(), found.end());
  if (found.size() > count) found.resize(count);
  std::vector<std::vector<long>> out;
  out.reserve(found.size());
  for (auto& [n2, v] : found) out.push_back(std::move(v));
  return out;
}

json closure_result_json(const ClosureResult& r) {
  json j;
  j["format"] = 1;
  j["base"] = unipotent_json(r.closed.base);
  j["algebra_basis"] = scalar_rows_json(r.raw.algebra.space.rows);
  j["algebra_rational_basis"] = scalar_rows_json(r.closed.algebra.space.rows);
  j["dims"] = json{{"raw", r.raw.algebra.dim()},
                   {"closed", r.closed.algebra.dim()}};
  j["dense_in_group"] = r.dense_in_group();
  check_output_shape(j);
  return j;
}

json subalgebra_json(const Subalgebra& h) {
  json j;
  j["format"] = 1;
  j["n"] = h.group.n;
  j["basis"] = scalar_rows_json(h.space.rows);
  check_output_shape(j);
  return j;
}

json malcev_basis_json(const MalcevBasis& B) {
  json j;
  j["format"] = 1;
  j["n"] = B.group.n;
  json basis = json::array();
  for (const NilMatrix& x : B.xi) basis.push_back(scalar_vec_json(x.flatten()));
  j["basis"] = std::move(basis);
  j["through_rank"] = B.through_rank;
  j["prefix_closed"] = B.prefix_closed;
  check_output_shape(j);
  return j;
}

json weyl_report_json(const WeylReport& r) {
  json j;
  j["format"] = 1;
  j["kind"] = "numeric";
  j["verdict"] = r.verdict;
  j["cud_consistent"] = r.cud_consistent;
  j["decay_threshold"] = r.decay_threshold;
  json rows = json::array();
  for (const WeylRow& row : r.rows) {
    json o;
    o["m"] = row.m;
    o["T"] = row.T;
    o["re_w"] = row.W.real();
    o["im_w"] = row.W.imag();
    o["abs_w"] = row.abs_w;
    o["ok"] = row.ok;
    o["error"] = row.error;
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  json probes = json::array();
  for (const ProbeRow& p : r.probes) {
    json o;
    o["m"] = p.m;
    o["t"] = p.t;
    o["value"] = p.value;
    probes.push_back(std::move(o));
  }
  j["probes"] = std::move(probes);
  check_output_shape(j);
  return j;
}

json exact_curve_json(const MonomialCurve& sigma) {
  CudVerdict v = cud_verdict_polynomial(sigma);
  TorusClosure tc = torus_curve_closure(sigma);
  json j;
  j["format"] = 1;
  j["kind"] = "exact";
  j["cud"] = v.cud;
  j["dense"] = v.dense;
  json witnesses = json::array();
  for (const auto& w : v.witnesses) {
    json row = json::array();
    for (const Integer& z : w) row.push_back(z.get_str());
    witnesses.push_back(std::move(row));
  }
  j["witnesses"] = std::move(witnesses);
  j["base"] = scalar_vec_json(tc.base);
  j["direction_basis"] = scalar_rows_json(tc.direction.rows);
  check_output_shape(j);
  return j;
}

json nearest_coset_json(const MonomialCurve& sigma) {
  AffineCoset c = abelian_nearest_coset(sigma);
  json j;
  j["format"] = 1;
  j["kind"] = "nearest-coset";
  j["base"] = scalar_vec_json(c.base);
  j["direction_basis"] = scalar_rows_json(c.direction.rows);
  check_output_shape(j);
  return j;
}

json verify_report_json(const VerifyReport& rep, const ClosureResult& closure) {
  json j;
  j["format"] = 1;
  j["orbit_count"] = rep.orbit_count;
  j["predicted_count"] = rep.predicted_count;
  j["max_orbit_to_predicted"] = rep.max_orbit_to_predicted;
  j["max_predicted_to_orbit"] = rep.max_predicted_to_orbit;
  j["coverage"] = rep.coverage;
  j["delta"] = rep.delta;
  j["containment_tol"] = rep.containment_tol;
  j["density_tol"] = rep.density_tol;
  j["containment_pass"] = rep.containment_pass;
  j["density_pass"] = rep.density_pass;
  j["pass"] = rep.pass;
  j["closure"] = closure_result_json(closure);
  check_output_shape(j);
  return j;
}

void check_output_shape(const json& j) {
  if (!j.is_object() || j.value("format", 0) != 1)
    throw MathError("output self-check failed: missing \"format\": 1");
  if (auto it = j.find("kind"); it != j.end()) {
    std::string kind = it->is_string() ? it->get<std::string>() : "";
    if (kind == "numeric")
      require_shape(j,
                    {{"format", JT::Int},
                     {"kind", JT::Str},
                     {"verdict", JT::Str},
                     {"cud_consistent", JT::Bool},
                     {"decay_threshold", JT::Num},
                     {"rows", JT::Arr},
                     {"probes", JT::Arr}},
                    "the numeric verdict");
    else if (kind == "exact")
      require_shape(j,
                    {{"format", JT::Int},
                     {"kind", JT::Str},
                     {"cud", JT::Bool},
                     {"dense", JT::Bool},
                     {"witnesses", JT::Arr},
                     {"base", JT::Arr},
                     {"direction_basis", JT::Arr}},
                    "the exact verdict");
    else if (kind == "nearest-coset")
      require_shape(j,
                    {{"format", JT::Int},
                     {"kind", JT::Str},
                     {"base", JT::Arr},
                     {"direction_basis", JT::Arr}},
                    "the nearest coset");
    else
      throw MathError("output self-check failed: unknown kind");
    return;
  }
  if (j.contains("dense_in_group")) {
    require_shape(j,
                  {{"format", JT::Int},
                   {"base", JT::Arr},
                   {"algebra_basis", JT::Arr},
                   {"algebra_rational_basis", JT::Arr},
                   {"dims", JT::Obj},
                   {"dense_in_group", JT::Bool}},
                  "the closure result");
    require_shape(j["dims"], {{"raw", JT::Int}, {"closed", JT::Int}},
                  "the closure dims");
    return;
  }
  if (j.contains("through_rank")) {
    require_shape(j,
                  {{"format", JT::Int},
                   {"n", JT::Int},
                   {"basis", JT::Arr},
                   {"through_rank", JT::Int},
                   {"prefix_closed", JT::Bool}},
                  "the Malcev basis");
    return;
  }
  if (j.contains("pass")) {
    require_shape(j,
                  {{"format", JT::Int},
                   {"orbit_count", JT::Int},
                   {"predicted_count", JT::Int},
                   {"max_orbit_to_predicted", JT::Num},
                   {"max_predicted_to_orbit", JT::Num},
                   {"coverage", JT::Num},
                   {"delta", JT::Num},
                   {"containment_tol", JT::Num},
                   {"density_tol", JT::Num},
                   {"containment_pass", JT::Bool},
                   {"density_pass", JT::Bool},
                   {"pass", JT::Bool},
                   {"closure", JT::Obj}},
                  "the verification report");
    check_output_shape(j["closure"]);
    return;
  }
  if (j.contains("examples")) {
    require_shape(j, {{"format", JT::Int}, {"examples", JT::Arr}},
                  "the example manifest");
    for (const json& e : j["examples"]) {
      if (!e.is_object() || !e.contains("name") || !e["name"].is_string() ||
          !e.contains("command") || !e["command"].is_string())
        throw MathError("output self-check failed: example manifest entry");
    }
    return;
  }
  if (j.contains("basis")) {
    require_shape(
        j, {{"format", JT::Int}, {"n", JT::Int}, {"basis", JT::Arr}},
        "the subalgebra");
    return;
  }
  throw MathError("output self-check failed: unrecognized output object");
}

namespace {

json sqrt2_field_json() {
  json f;
  f["min_poly"] = json::array({-2, 0, 1});
  f["root_interval"] = json::array({"1", "2"});
  return f;
}

json rational_field_json() {
  json f;
  f["min_poly"] = json::array({0, 1});
  f["root_interval"] = json::array({"-1", "1"});
  return f;
}

json example_json(const std::string& name) {
  json j;
  j["format"] = 1;
  if (name == "heisenberg-line") {
    j["description"] =
        "One-parameter image exp(t*(E12 + sqrt(2)*E23)) in the 3x3 "
        "upper-triangular group; its projection mod the integer lattice is "
        "dense.";
    j["command"] = "closure-polymap";
    j["field"] = sqrt2_field_json();
    j["group"] = json{{"n", 3}};
    j["map"] = json::array({json::array({"1", "t", "1/2*theta*t^2"}),
                            json::array({"0", "1", "theta*t"}),
                            json::array({"0", "0", "1"})});
    json plan;
    plan["box"] = json::array({json::array({0, 1000})});
    plan["strategy"] = "halton";
    plan["count"] = 4096;
    plan["seed"] = 1;
    json options;
    options["plan"] = std::move(plan);
    options["predicted_count"] = 4096;
    options["delta"] = 0.125;
    j["options"] = std::move(options);
  } else if (name == "heisenberg-abelian") {
    j["description"] =
        "Orbit of the one-dimensional algebra spanned by E12 + sqrt(2)*E13 "
        "in the 3x3 upper-triangular group; rationalizing doubles the "
        "dimension, so the closure is a proper subset.";
    j["command"] = "closure-orbit";
    j["field"] = sqrt2_field_json();
    j["group"] = json{{"n", 3}};
    j["subalgebra"] = json{{"basis", json::array({json::array(
                               {"1", "theta", "0"})})}};
  } else if (name == "kronecker") {
    j["description"] =
        "Line (t, sqrt(2)*t) in the 2-torus: every sampled frequency decays, "
        "consistent with continuous uniform distribution.";
    j["command"] = "equi";
    j["field"] = sqrt2_field_json();
    j["curve"] = json::array({"t", "theta*t"});
    json options;
    options["Ts"] = json::array({100, 1000, 10000});
    j["options"] = std::move(options);
  } else if (name == "ln-curve") {
    j["description"] =
        "Curve (t, ln(1+t)): dense in the 2-torus yet the frequency (0,1) "
        "average stabilizes near 0.157, so the curve is not continuously "
        "uniformly distributed.";
    j["command"] = "equi";
    j["field"] = rational_field_json();
    j["curve"] = json::array({"t", "ln1p(t)"});
    json options;
    options["ms"] = json::array({json::array({0, 1})});
    options["Ts"] = json::array({100, 10000, 1000000});
    j["options"] = std::move(options);
  } else if (name == "hrushovski") {
    j["description"] =
        "Hyperbola (t, 1/t) for large t: the nearest affine coset at "
        "infinity is the horizontal axis through the origin.";
    j["command"] = "equi";
    j["field"] = rational_field_json();
    j["monomials"] = json::array(
        {json{{"exponent", "1"}, {"coefficient", json::array({"1", "0"})}},
         json{{"exponent", "-1"}, {"coefficient", json::array({"0", "1"})}}});
  } else {
    throw MathError("unknown example \"" + name + "\"");
  }
  return j;
}

}  // namespace

std::vector<std::string> example_names() {
  return {"heisenberg-line", "heisenberg-abelian", "kronecker", "ln-curve",
          "hrushovski"};
}

std::string example_text(const std::string& name) {
  return example_json(name).dump(2) + "\n";
}

}  // namespace nilclose
