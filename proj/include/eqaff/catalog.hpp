#pragma once

// Built-in scenarios. Each entry is scenario JSON, so the catalog doubles as
// documentation of the file format and as golden fixtures for the tests.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "eqaff/errors.hpp"
#include "eqaff/scenario.hpp"

namespace eqaff {

inline constexpr std::array<std::string_view, 9> kCatalogJson{
    R"json({"name": "paper-ex-i-riem",
        "description": "vertical line (lambda, t) in g = x^-3 (dx^2 + dy^2)",
        "metric": {"g11": "x^(-3)", "g12": "0", "g22": "x^(-3)"},
        "parameters": {"lambda": 1},
        "curve": {"x": "lambda", "y": "t", "domain": [-10, 10]},
        "grid": {"count": 50, "range": [-5, 5]},
        "t0": 0})json",
    R"json({"name": "paper-ex-i-lor",
        "description": "vertical line (lambda, t) in g = x^-3 (dx^2 - dy^2)",
        "metric": {"g11": "x^(-3)", "g12": "0", "g22": "-x^(-3)"},
        "parameters": {"lambda": 1},
        "curve": {"x": "lambda", "y": "t", "domain": [-10, 10]},
        "grid": {"count": 50, "range": [-5, 5]},
        "t0": 0})json",
    R"json({"name": "paper-ex-ii",
        "description": "(lambda cos t, y0 + lambda sin t) in g = x^-3 (dx^2 + dy^2): constant kappa_a, varying kappa_r",
        "metric": {"g11": "x^(-3)", "g12": "0", "g22": "x^(-3)"},
        "parameters": {"lambda": 4, "y0": 0},
        "curve": {"x": "lambda*cos(t)", "y": "y0 + lambda*sin(t)",
                  "domain": [-1.5707963267948966, 1.5707963267948966]},
        "grid": {"count": 101, "range": [-1.2, 1.2]},
        "t0": 0})json",
    R"json({"name": "paper-ex-iii",
        "description": "(lambda cosh t, y0 + lambda sinh t) in g = x^-3 (dx^2 - dy^2): constant kappa_a, varying kappa_r",
        "metric": {"g11": "x^(-3)", "g12": "0", "g22": "-x^(-3)"},
        "parameters": {"lambda": 4, "y0": 0},
        "curve": {"x": "lambda*cosh(t)", "y": "y0 + lambda*sinh(t)", "domain": [-10, 10]},
        "grid": {"count": 101, "range": [-2, 2]},
        "t0": 0})json",
    R"json({"name": "euclid-circle",
        "description": "circle of radius R in the Euclidean plane",
        "metric": {"g11": "1", "g12": "0", "g22": "1"},
        "parameters": {"R": 2},
        "curve": {"x": "R*cos(t)", "y": "R*sin(t)", "domain": [-3.141592653589793, 3.141592653589793]},
        "grid": {"count": 61, "range": [-3, 3]},
        "t0": 0})json",
    R"json({"name": "euclid-parabola",
        "description": "parabola (t, t^2/2) in the Euclidean plane",
        "metric": {"g11": "1", "g12": "0", "g22": "1"},
        "parameters": {},
        "curve": {"x": "t", "y": "t^2/2", "domain": [-5, 5]},
        "grid": {"count": 41, "range": [-2, 2]},
        "t0": 0})json",
    R"json({"name": "euclid-line",
        "description": "straight line (t, 0) in the Euclidean plane (a geodesic)",
        "metric": {"g11": "1", "g12": "0", "g22": "1"},
        "parameters": {},
        "curve": {"x": "t", "y": "0", "domain": [-5, 5]},
        "grid": {"count": 21, "range": [-2, 2]},
        "t0": 0})json",
    R"json({"name": "minkowski-hyperbola",
        "description": "unit hyperbola (cosh t, sinh t) in the Minkowski plane diag(1, -1)",
        "metric": {"g11": "1", "g12": "0", "g22": "-1"},
        "parameters": {},
        "curve": {"x": "cosh(t)", "y": "sinh(t)", "domain": [-5, 5]},
        "grid": {"count": 41, "range": [-2, 2]},
        "t0": 0})json",
    R"json({"name": "sphere-chart",
        "description": "latitude circle x = theta0 on the unit sphere, g = dx^2 + sin(x)^2 dy^2",
        "metric": {"g11": "1", "g12": "0", "g22": "sin(x)^2"},
        "parameters": {"theta0": 1},
        "curve": {"x": "theta0", "y": "t", "domain": [-3, 3]},
        "grid": {"count": 31, "range": [-2.5, 2.5]},
        "t0": 0})json",
};

inline std::vector<Scenario> catalog() {
  std::vector<Scenario> out;
  for (const auto text : kCatalogJson) out.push_back(Scenario::parse_json(std::string(text)));
  return out;
}

inline Scenario builtin(std::string_view name) {
  for (auto& s : catalog()) {
    if (s.name == name) return s;
  }
  throw ScenarioError("unknown builtin scenario '" + std::string(name) + "'");
}

}  // namespace eqaff
