// Command-line front end: reads a problem JSON file, runs one pipeline, and
// prints a JSON report on stdout.  CSV side files go under --out-dir.  Exit
// codes: 0 success, 2 parse/schema error, 3 verification failure, 4 violated
// mathematical precondition.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilclose/closure.hpp"
#include "nilclose/equi.hpp"
#include "nilclose/errors.hpp"
#include "nilclose/malcev.hpp"
#include "nilclose/problem.hpp"
#include "nilclose/subalgebra.hpp"
#include "nilclose/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliOptions {
  std::string input;
  std::string out_dir;
  std::optional<uint64_t> seed;
  std::optional<double> tol;
  std::optional<long long> samples;
  std::string name;  // examples only
};

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nilclose::ParseError("cannot open input file " + path, 0, 0);
  ss << in.rdbuf();
  return ss.str();
}

void write_side_file(const std::string& dir, const std::string& name,
                     const std::string& content) {
  fs::create_directories(dir);
  fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw nilclose::MathError("cannot write " + p.string());
  out << content;
}

void print_report(const json& j) { std::cout << j.dump(2) << "\n"; }

nilclose::ProblemFile load_problem(const CliOptions& cli) {
  nilclose::ProblemFile p = nilclose::ProblemFile::parse_text(read_input(cli.input));
  if (cli.seed && p.options.plan) p.options.plan->seed = *cli.seed;
  if (cli.tol) {
    if (!(*cli.tol > 0))
      throw nilclose::ParseError("--tol needs a positive value", 0, 0);
    p.options.quadrature_tol = *cli.tol;
    p.options.tolerances.containment = *cli.tol;
  }
  if (cli.samples) {
    if (*cli.samples < 1)
      throw nilclose::ParseError("--samples needs a positive count", 0, 0);
    if (p.options.plan) p.options.plan->count = static_cast<size_t>(*cli.samples);
    p.options.predicted_count = static_cast<size_t>(*cli.samples);
  }
  return p;
}

const nilclose::Subalgebra& need_subalgebra(const nilclose::ProblemFile& p,
                                            const char* cmd) {
  if (!p.subalgebra)
    throw nilclose::ParseError(
        std::string("$.subalgebra: required by ") + cmd, 0, 0);
  return *p.subalgebra;
}

int run_closure_orbit(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  nilclose::ClosureResult r =
      nilclose::orbit_closure(need_subalgebra(p, "closure-orbit"));
  print_report(nilclose::closure_result_json(r));
  return 0;
}

int run_closure_polymap(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  if (!p.map)
    throw nilclose::ParseError("$.map: required by closure-polymap", 0, 0);
  nilclose::ClosureResult r = nilclose::polymap_closure(*p.map, *p.group);
  print_report(nilclose::closure_result_json(r));
  return 0;
}

int run_rationalize(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  nilclose::Subalgebra h =
      nilclose::rational_closure(need_subalgebra(p, "rationalize"));
  print_report(nilclose::subalgebra_json(h));
  return 0;
}

int run_malcev(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  nilclose::MalcevBasis B =
      nilclose::weak_malcev_through(need_subalgebra(p, "malcev"));
  print_report(nilclose::malcev_basis_json(B));
  return 0;
}

bool integer_exponents(const nilclose::MonomialCurve& sigma) {
  for (const auto& t : sigma.terms)
    if (t.exponent.get_den() != 1 || t.exponent < 0) return false;
  return true;
}

int run_equi(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  if (p.monomials) {
    // Integer exponents admit the exact torus verdict; general rational
    // exponents get the limit coset of the curve at infinity.
    json out = integer_exponents(*p.monomials)
                   ? nilclose::exact_curve_json(*p.monomials)
                   : nilclose::nearest_coset_json(*p.monomials);
    print_report(out);
    return 0;
  }
  if (!p.curve)
    throw nilclose::ParseError("$.curve: required by equi (or $.monomials)", 0,
                               0);
  std::vector<std::vector<long>> ms = p.options.ms;
  if (ms.empty())
    ms = nilclose::default_frequencies(p.curve->dim(), 8);
  for (size_t i = 0; i < ms.size(); ++i)
    if (static_cast<int>(ms[i].size()) != p.curve->dim())
      throw nilclose::ParseError(
          "$.options.ms[" + std::to_string(i) + "]: expected " +
              std::to_string(p.curve->dim()) + " entries",
          0, 0);
  std::vector<double> Ts = p.options.horizons;
  if (Ts.empty()) Ts = {1e2, 1e3, 1e4};
  nilclose::WeylReport rep =
      nilclose::cud_numeric(*p.curve, ms, Ts, p.options.quadrature_tol);
  if (!cli.out_dir.empty())
    write_side_file(cli.out_dir, "weyl.csv", nilclose::weyl_report_csv(rep));
  print_report(nilclose::weyl_report_json(rep));
  return 0;
}

int run_verify(const CliOptions& cli) {
  nilclose::ProblemFile p = load_problem(cli);
  if (!p.map) throw nilclose::ParseError("$.map: required by verify", 0, 0);
  if (!p.options.plan)
    throw nilclose::ParseError("$.options.plan: required by verify", 0, 0);
  const nilclose::SamplePlan& plan = *p.options.plan;
  if (plan.box.size() != p.map_vars.size())
    throw nilclose::ParseError(
        "$.options.plan.box: expected one [lo, hi] per map variable (" +
            std::to_string(p.map_vars.size()) + ")",
        0, 0);
  nilclose::ClosureResult r = nilclose::polymap_closure(*p.map, *p.group);
  std::vector<nilclose::FloatReducedPoint> orbit =
      nilclose::sample_orbit(*p.map, plan);
  size_t pc = p.options.predicted_count ? p.options.predicted_count : plan.count;
  nilclose::SamplePlan pplan =
      nilclose::predicted_plan(r, pc, plan.strategy, plan.seed + 1);
  std::vector<nilclose::FloatReducedPoint> predicted =
      nilclose::sample_predicted(r, pplan);
  nilclose::VerifyReport rep = nilclose::hausdorff_check(
      orbit, predicted, p.options.delta, p.options.tolerances,
      p.options.analytic_containment ? &r : nullptr);
  if (!cli.out_dir.empty()) {
    write_side_file(cli.out_dir, "orbit.csv",
                    nilclose::samples_csv(orbit, p.group->n));
    write_side_file(cli.out_dir, "predicted.csv",
                    nilclose::samples_csv(predicted, p.group->n));
  }
  print_report(nilclose::verify_report_json(rep, r));
  return rep.pass ? 0 : 3;
}

int run_examples(const CliOptions& cli) {
  std::vector<std::string> names = nilclose::example_names();
  if (!cli.name.empty()) {
    if (std::find(names.begin(), names.end(), cli.name) == names.end())
      throw nilclose::ParseError("unknown example \"" + cli.name + "\"", 0, 0);
    std::string text = nilclose::example_text(cli.name);
    nilclose::ProblemFile::parse_text(text);  // self-check before emission
    if (!cli.out_dir.empty())
      write_side_file(cli.out_dir, cli.name + ".json", text);
    std::cout << text;
    return 0;
  }
  json manifest;
  manifest["format"] = 1;
  json list = json::array();
  for (const std::string& name : names) {
    std::string text = nilclose::example_text(name);
    nilclose::ProblemFile parsed = nilclose::ProblemFile::parse_text(text);
    json e;
    e["name"] = name;
    e["command"] = parsed.command;
    e["description"] = parsed.description;
    if (!cli.out_dir.empty()) {
      write_side_file(cli.out_dir, name + ".json", text);
      e["path"] = (fs::path(cli.out_dir) / (name + ".json")).string();
    }
    list.push_back(std::move(e));
  }
  manifest["examples"] = std::move(list);
  nilclose::check_output_shape(manifest);
  print_report(manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact closures of polynomial images and subgroup orbits in "
      "upper-triangular nilmanifold quotients, with numerical "
      "equidistribution checks."};
  app.require_subcommand(1);
  app.footer("Environment: NILCLOSE_THREADS caps internal parallelism.");

  CliOptions cli;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cli.input,
                    "problem JSON file, or - for stdin")
        ->required();
    sub->add_option("--out-dir", cli.out_dir, "directory for CSV side files");
    sub->add_option("--seed", cli.seed, "override the sampling seed");
    sub->add_option("--tol", cli.tol,
                    "override the quadrature / containment tolerance");
    sub->add_option("--samples", cli.samples, "override sample counts");
  };

  add_common(app.add_subcommand(
      "closure-orbit", "closure of a connected subgroup orbit mod the lattice"));
  add_common(app.add_subcommand(
      "closure-polymap",
      "closure of a polynomial image mod the lattice"));
  add_common(app.add_subcommand(
      "rationalize", "smallest rational algebra containing a subalgebra"));
  add_common(app.add_subcommand(
      "malcev", "weak Malcev basis through a subalgebra"));
  add_common(app.add_subcommand(
      "equi", "Weyl-sum equidistribution report for a curve"));
  add_common(app.add_subcommand(
      "verify", "sample-based check of a predicted polynomial-image closure"));
  CLI::App* examples =
      app.add_subcommand("examples", "bundled demonstration inputs");
  examples->add_option("--name", cli.name, "print one example by name");
  examples->add_option("--out-dir", cli.out_dir, "write example files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "closure-orbit") return run_closure_orbit(cli);
    if (cmd == "closure-polymap") return run_closure_polymap(cli);
    if (cmd == "rationalize") return run_rationalize(cli);
    if (cmd == "malcev") return run_malcev(cli);
    if (cmd == "equi") return run_equi(cli);
    if (cmd == "verify") return run_verify(cli);
    if (cmd == "examples") return run_examples(cli);
    std::cerr << "error: unknown command " << cmd << "\n";
    return 1;
  } catch (const nilclose::ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line > 0)
      std::cerr << " (line " << e.line << ", column " << e.column << ")";
    std::cerr << "\n";
    return 2;
  } catch (const nilclose::QuadratureError& e) {
    std::cerr << "error: " << e.what()
              << " (error reached: " << e.achieved_error << ")\n";
    return 4;
  } catch (const nilclose::MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
