#pragma once

// Scenario files: a metric, a curve, a parameter environment and a t grid,
// stored as JSON.
//
//   {
//     "name": "paper-ex-ii",                         (optional)
//     "description": "...",                          (optional)
//     "metric": {"g11": "x^(-3)", "g12": "0", "g22": "x^(-3)"},
//     "parameters": {"lambda": 4, "y0": 0},
//     "curve": {"x": "lambda*cos(t)", "y": "y0 + lambda*sin(t)", "domain": [a, b]},
//     "grid": {"count": 101, "range": [lo, hi]}  or  {"t": [t1, t2, ...]},
//     "t0": 0,
//     "options": {"jet_order": 4, "quadrature_tolerance": 1e-10, "tol_relation": 1e-7,
//                 "tol_ode": 1e-7, "tol_frenet": 1e-8, "tol_oracle": 1e-4}
//   }
//
// A grid without "range" places `count` points strictly inside the domain.

#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "eqaff/curve.hpp"
#include "eqaff/errors.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/manifold.hpp"

namespace eqaff {

struct ScenarioOptions {
  int jet_order = kDefaultJetOrder;
  double quadrature_tolerance = 1e-10;
  double tol_relation = 1e-7;
  double tol_ode = 1e-7;
  double tol_frenet = 1e-8;
  double tol_oracle = 1e-4;
};

struct GridSpec {
  int count = 0;
  std::optional<std::pair<double, double>> range;
  std::vector<double> points;  // explicit list; takes precedence when non-empty
};

struct Scenario {
  std::string name;
  std::string description;
  std::string g11, g12 = "0", g22;
  ParamEnv parameters;
  std::string x, y;
  double domain_lo = 0.0, domain_hi = 1.0;
  GridSpec grid;
  double t0 = 0.0;
  ScenarioOptions options;

  MetricSpec metric() const {
    const auto vars = metric_variables();
    return {parse_field("metric.g11", g11, vars), parse_field("metric.g12", g12, vars),
            parse_field("metric.g22", g22, vars), parameters};
  }

  CurveSpec curve() const {
    const auto vars = curve_variables();
    return {parse_field("curve.x", x, vars), parse_field("curve.y", y, vars), domain_lo, domain_hi, parameters};
  }

  std::vector<double> grid_points() const {
    if (!grid.points.empty()) return grid.points;
    std::vector<double> out;
    const int n = grid.count;
    if (grid.range) {
      const auto [lo, hi] = *grid.range;
      if (n == 1) return {0.5 * (lo + hi)};
      for (int i = 0; i < n; ++i) out.push_back(i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    } else {
      for (int i = 0; i < n; ++i) out.push_back(domain_lo + (domain_hi - domain_lo) * (i + 1) / (n + 1));
    }
    return out;
  }

  // Throws ScenarioError describing the first problem found.
  void validate() const {
    if (!std::isfinite(domain_lo) || !std::isfinite(domain_hi)) throw ScenarioError("curve.domain: endpoints must be finite");
    if (!(domain_lo < domain_hi)) throw ScenarioError("curve.domain: need a < b");
    if (grid.points.empty() && grid.count < 1) throw ScenarioError("grid: need count >= 1 or an explicit t list");
    if (grid.range && !(grid.range->first <= grid.range->second)) throw ScenarioError("grid.range: need lo <= hi");
    if (options.jet_order < 4 || options.jet_order > Jet::kMaxOrder) {
      throw ScenarioError("options.jet_order: must be in [4, " + std::to_string(Jet::kMaxOrder) + "]");
    }
    const MetricSpec m = metric();
    const CurveSpec c = curve();
    std::set<std::string> used;
    for (const auto* e : {&m.g11, &m.g12, &m.g22, &c.x, &c.y}) collect_parameters(*e, used);
    for (const auto& p : used) {
      if (!parameters.count(p)) throw ScenarioError("parameters: '" + p + "' is referenced but not bound");
    }
    for (double t : grid_points()) {
      if (!c.contains(t)) throw ScenarioError("grid: t = " + format_number(t) + " is outside the open domain");
    }
    if (!c.contains(t0)) throw ScenarioError("t0: " + format_number(t0) + " is outside the open domain");
  }

  static Scenario from_json(const nlohmann::json& j) {
    try {
      Scenario s;
      s.name = j.value("name", "");
      s.description = j.value("description", "");
      const auto& m = j.at("metric");
      s.g11 = m.at("g11").get<std::string>();
      s.g12 = m.value("g12", "0");
      s.g22 = m.at("g22").get<std::string>();
      if (j.contains("parameters")) {
        for (const auto& [k, v] : j.at("parameters").items()) s.parameters[k] = v.get<double>();
      }
      const auto& c = j.at("curve");
      s.x = c.at("x").get<std::string>();
      s.y = c.at("y").get<std::string>();
      const auto dom = c.at("domain").get<std::vector<double>>();
      if (dom.size() != 2) throw ScenarioError("curve.domain: expected [a, b]");
      s.domain_lo = dom[0];
      s.domain_hi = dom[1];
      if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("t")) s.grid.points = g.at("t").get<std::vector<double>>();
        s.grid.count = g.value("count", 0);
        if (g.contains("range")) {
          const auto r = g.at("range").get<std::vector<double>>();
          if (r.size() != 2) throw ScenarioError("grid.range: expected [lo, hi]");
          s.grid.range = std::make_pair(r[0], r[1]);
        }
      } else {
        s.grid.count = 101;
      }
      s.t0 = j.value("t0", 0.5 * (s.domain_lo + s.domain_hi));
      if (j.contains("options")) {
        const auto& o = j.at("options");
        s.options.jet_order = o.value("jet_order", s.options.jet_order);
        s.options.quadrature_tolerance = o.value("quadrature_tolerance", s.options.quadrature_tolerance);
        s.options.tol_relation = o.value("tol_relation", s.options.tol_relation);
        s.options.tol_ode = o.value("tol_ode", s.options.tol_ode);
        s.options.tol_frenet = o.value("tol_frenet", s.options.tol_frenet);
        s.options.tol_oracle = o.value("tol_oracle", s.options.tol_oracle);
      }
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError(std::string("scenario JSON: ") + e.what());
    }
  }

  static Scenario parse_json(const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ScenarioError(std::string("scenario JSON: ") + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    if (!name.empty()) j["name"] = name;
    if (!description.empty()) j["description"] = description;
    j["metric"] = {{"g11", g11}, {"g12", g12}, {"g22", g22}};
    j["parameters"] = nlohmann::json::object();
    for (const auto& [k, v] : parameters) j["parameters"][k] = v;
    j["curve"] = {{"x", x}, {"y", y}, {"domain", {domain_lo, domain_hi}}};
    if (!grid.points.empty()) {
      j["grid"] = {{"t", grid.points}};
    } else {
      j["grid"] = {{"count", grid.count}};
      if (grid.range) j["grid"]["range"] = {grid.range->first, grid.range->second};
    }
    j["t0"] = t0;
    j["options"] = {{"jet_order", options.jet_order},
                    {"quadrature_tolerance", options.quadrature_tolerance},
                    {"tol_relation", options.tol_relation},
                    {"tol_ode", options.tol_ode},
                    {"tol_frenet", options.tol_frenet},
                    {"tol_oracle", options.tol_oracle}};
    return j;
  }

 private:
  static Expr parse_field(const char* field, const std::string& src, const VariableSet& vars) {
    try {
      return parse(src, vars);
    } catch (const InputError& e) {
      throw ScenarioError(std::string(field) + ": " + e.what());
    }
  }
};

}  // namespace eqaff
