// eqaff: curvature tables and verification reports for curves in 2D
// pseudo-Riemannian metrics.
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 computational error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqaff/eqaff.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitComputation = 3;

constexpr double kStructureTolerance = 1e-9;

struct CommonArgs {
  std::string scenario_file;
  std::string builtin;
  std::vector<std::string> params;
  std::optional<int> grid;
  std::optional<double> t0;
  std::string format = "csv";
  std::optional<int> jet_order;
  unsigned threads = 0;
};

struct VerifyArgs {
  std::optional<double> tol_relation, tol_ode, tol_frenet, tol_oracle;
  bool flip_omega = false;
};

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw eqaff::InputError(what + ": '" + text + "' is not a number");
  return v;
}

void add_common(CLI::App* cmd, CommonArgs& a) {
  auto* src = cmd->add_option_group("source");
  src->add_option("--scenario", a.scenario_file, "scenario JSON file");
  src->add_option("--builtin", a.builtin, "built-in scenario name (see `eqaff catalog`)");
  src->require_option(1);
  cmd->add_option("--param", a.params, "override a parameter, name=value (repeatable)");
  cmd->add_option("--grid", a.grid, "number of grid points")->check(CLI::PositiveNumber);
  cmd->add_option("--t0", a.t0, "reparametrization origin");
  cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jet-order", a.jet_order, "Taylor jet order (4..12)");
  cmd->add_option("--threads", a.threads, "worker threads (0: all cores)");
}

void add_tolerances(CLI::App* cmd, VerifyArgs& v) {
  cmd->add_option("--tol-relation", v.tol_relation, "relation residual tolerance");
  cmd->add_option("--tol-ode", v.tol_ode, "ODE residual tolerance");
  cmd->add_option("--tol-frenet", v.tol_frenet, "Frenet residual tolerance");
  cmd->add_option("--tol-oracle", v.tol_oracle, "finite-difference oracle relative tolerance");
}

eqaff::Scenario load_scenario(const CommonArgs& a) {
  eqaff::Scenario s;
  if (!a.builtin.empty()) {
    s = eqaff::builtin(a.builtin);
  } else {
    std::ifstream in(a.scenario_file);
    if (!in) throw eqaff::ScenarioError("cannot open '" + a.scenario_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    s = eqaff::Scenario::parse_json(buf.str());
  }
  for (const auto& p : a.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw eqaff::InputError("--param expects name=value, got '" + p + "'");
    const std::string name = p.substr(0, eq);
    s.parameters[name] = parse_real(p.substr(eq + 1), "--param " + name);
  }
  if (a.grid) {
    s.grid.points.clear();
    s.grid.count = *a.grid;
  }
  if (a.t0) s.t0 = *a.t0;
  if (a.jet_order) s.options.jet_order = *a.jet_order;
  s.validate();
  return s;
}

eqaff::SampleOptions sample_options(const eqaff::Scenario& s, const CommonArgs& a) {
  eqaff::SampleOptions o;
  o.jet_order = s.options.jet_order;
  o.threads = a.threads;
  return o;
}

int cmd_catalog() {
  for (const auto& s : eqaff::catalog()) std::cout << s.name << "  " << s.description << '\n';
  return kExitOk;
}

int cmd_eval(const CommonArgs& a) {
  const auto s = load_scenario(a);
  const auto samples = eqaff::sample_curve(s.curve(), s.metric(), s.grid_points(), sample_options(s, a));
  if (a.format == "json") {
    std::cout << eqaff::samples_json(samples).dump(2) << '\n';
  } else {
    eqaff::write_samples_csv(std::cout, samples);
  }
  return kExitOk;
}

int cmd_verify(const CommonArgs& a, const VerifyArgs& v) {
  const auto s = load_scenario(a);
  auto opt = sample_options(s, a);
  opt.flip_relation_omega = v.flip_omega;
  const auto curve = s.curve();
  const auto metric = s.metric();
  const auto grid = s.grid_points();
  const auto samples = eqaff::sample_curve(curve, metric, grid, opt);

  eqaff::VerifyTolerances tol{v.tol_relation.value_or(s.options.tol_relation), v.tol_ode.value_or(s.options.tol_ode),
                              v.tol_frenet.value_or(s.options.tol_frenet), v.tol_oracle.value_or(s.options.tol_oracle)};
  eqaff::oracle::OracleOptions oopt;
  oopt.tolerance = tol.oracle;
  const auto report = eqaff::oracle::cross_validate(curve, metric, grid, oopt);
  const auto summary = eqaff::summarize(samples, report, tol);
  if (a.format == "json") {
    auto j = eqaff::verify_json(summary);
    j["oracle"] = eqaff::oracle_json(report);
    std::cout << j.dump(2) << '\n';
  } else {
    eqaff::write_verify_text(std::cout, summary);
  }
  return summary.passed() ? kExitOk : kExitVerifyFailed;
}

int cmd_reparam(const CommonArgs& a) {
  const auto s = load_scenario(a);
  eqaff::QuadratureOptions q;
  q.abs_tol = s.options.quadrature_tolerance;
  q.rel_tol = s.options.quadrature_tolerance;
  const auto tab = eqaff::reparametrize(s.curve(), s.metric(), s.t0, s.grid_points(), q);
  if (a.format == "json") {
    std::cout << eqaff::reparam_json(tab).dump(2) << '\n';
  } else {
    eqaff::write_reparam_csv(std::cout, tab);
  }
  return kExitOk;
}

int cmd_structure(const CommonArgs& a, const std::vector<std::string>& points) {
  const auto s = load_scenario(a);
  const auto metric = s.metric();
  std::vector<std::pair<double, double>> xy;
  for (const auto& p : points) {
    const auto comma = p.find(',');
    if (comma == std::string::npos) throw eqaff::InputError("--point expects X,Y, got '" + p + "'");
    xy.emplace_back(parse_real(p.substr(0, comma), "--point x"), parse_real(p.substr(comma + 1), "--point y"));
  }
  if (xy.empty()) {
    // Default: the curve's own positions on the grid.
    const auto curve = s.curve();
    for (double t : s.grid_points()) {
      const eqaff::Bindings<double> vars{{"t", t}};
      xy.emplace_back(eqaff::evaluate(curve.x, vars, curve.params), eqaff::evaluate(curve.y, vars, curve.params));
    }
  }
  std::vector<eqaff::StructureReport> reps;
  bool ok = true;
  for (const auto& [x, y] : xy) {
    reps.push_back(eqaff::structure_check(metric, x, y));
    ok = ok && reps.back().max_residual() < kStructureTolerance;
  }
  if (a.format == "json") {
    std::cout << eqaff::structure_json(reps).dump(2) << '\n';
  } else {
    eqaff::write_structure_csv(std::cout, reps);
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frenet and equi-affine curvatures of curves in 2D pseudo-Riemannian metrics", "eqaff"};
  app.require_subcommand(1);

  CommonArgs common;
  VerifyArgs verify;
  std::vector<std::string> points;

  auto* catalog = app.add_subcommand("catalog", "list built-in scenarios");
  auto* eval = app.add_subcommand("eval", "tabulate curvatures over the grid");
  auto* ver = app.add_subcommand("verify", "check the curvature relation, ODE, Frenet equation and FD oracle");
  auto* reparam = app.add_subcommand("reparam", "arclength and equi-affine arclength tables");
  auto* structure = app.add_subcommand("structure", "J / volume form identities and scalar curvature");
  for (auto* cmd : {eval, ver, reparam, structure}) add_common(cmd, common);
  add_tolerances(ver, verify);
  ver->add_flag("--flip-omega", verify.flip_omega, "debug: evaluate the relation with the wrong signature");
  structure->add_option("--point", points, "evaluation point X,Y (repeatable; default: curve positions)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (catalog->parsed()) return cmd_catalog();
    if (eval->parsed()) return cmd_eval(common);
    if (ver->parsed()) return cmd_verify(common, verify);
    if (reparam->parsed()) return cmd_reparam(common);
    if (structure->parsed()) return cmd_structure(common, points);
  } catch (const eqaff::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const eqaff::ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitInput;
}
