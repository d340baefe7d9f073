#pragma once

// Finite-difference oracle. Everything here is computed from plain-real
// evaluations of the metric and curve expressions with its own Levi-Civita
// code, and is compared against the jet engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "eqaff/curvature.hpp"
#include "eqaff/curve.hpp"
#include "eqaff/errors.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/manifold.hpp"

namespace eqaff::oracle {

using ScalarFn = std::function<double(double)>;

inline double default_step(double t) { return 1e-5 * std::max(1.0, std::fabs(t)); }

// Central differences at h and h/2, Richardson-extrapolated. Returns f' (and
// f'' when order is 2).
inline std::vector<double> fd_scalar_derivatives(const ScalarFn& f, double t, int order, double h) {
  if (!(h > 0.0)) throw InputError("finite-difference step must be positive");
  if (order != 1 && order != 2) throw InputError("finite-difference order must be 1 or 2");
  const double f0 = f(t);
  const auto d1 = [&](double s) { return (f(t + s) - f(t - s)) / (2.0 * s); };
  const auto d2 = [&](double s) { return (f(t + s) - 2.0 * f0 + f(t - s)) / (s * s); };
  std::vector<double> out{(4.0 * d1(0.5 * h) - d1(h)) / 3.0};
  if (order == 2) out.push_back((4.0 * d2(0.5 * h) - d2(h)) / 3.0);
  return out;
}

inline std::vector<double> fd_scalar_derivatives(const ScalarFn& f, double t, int order) {
  return fd_scalar_derivatives(f, t, order, default_step(t));
}

namespace detail {

// Three-level Richardson tableau on central differences at h, h/2, h/4.
template <class D>
inline double richardson3(const D& d, double h) {
  const double d0 = d(h), d1 = d(0.5 * h), d2 = d(0.25 * h);
  const double r0 = (4.0 * d1 - d0) / 3.0, r1 = (4.0 * d2 - d1) / 3.0;
  return (16.0 * r1 - r0) / 15.0;
}

inline double rich1(const ScalarFn& f, double t, double h) {
  return richardson3([&](double s) { return (f(t + s) - f(t - s)) / (2.0 * s); }, h);
}

inline double rich2(const ScalarFn& f, double t, double h) {
  const double f0 = f(t);
  return richardson3([&](double s) { return (f(t + s) - 2.0 * f0 + f(t - s)) / (s * s); }, h);
}

using M2 = std::array<std::array<double, 2>, 2>;
using G3 = std::array<M2, 2>;  // [k][i][j]

inline M2 plain_metric(const MetricSpec& m, double x, double y) {
  const Bindings<double> vars{{"x", x}, {"y", y}};
  const double g11 = evaluate(m.g11, vars, m.params);
  const double g12 = evaluate(m.g12, vars, m.params);
  const double g22 = evaluate(m.g22, vars, m.params);
  return {{{g11, g12}, {g12, g22}}};
}

inline double spatial_step(double x, double y) { return 1e-3 * std::max({1.0, std::fabs(x), std::fabs(y)}); }

// Gamma^k_ij from difference quotients of the metric.
inline G3 fd_gamma(const MetricSpec& m, double x, double y, double h) {
  std::array<M2, 2> dg{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      dg[0][i][j] = rich1([&](double s) { return plain_metric(m, s, y)[i][j]; }, x, h);
      dg[1][i][j] = rich1([&](double s) { return plain_metric(m, x, s)[i][j]; }, y, h);
    }
  }
  const M2 g = plain_metric(m, x, y);
  const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  const double scale = std::max({std::fabs(g[0][0]), std::fabs(g[0][1]), std::fabs(g[1][1])});
  if (!(std::fabs(det) > kDegenerateMetricFactor * scale * scale)) throw DegenerateMetric("oracle: det g ~ 0");
  const M2 inv{{{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}}};
  G3 gam{};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 2; ++l) acc += inv[k][l] * 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        gam[k][i][j] = acc;
      }
    }
  }
  return gam;
}

}  // namespace detail

// Gamma from differenced metric partials; d Gamma from differenced Gamma.
inline ChristoffelEval<double> fd_christoffel(const MetricSpec& metric, double x, double y, double h) {
  ChristoffelEval<double> ce{};
  const auto gam = detail::fd_gamma(metric, x, y, h);
  const double H = 10.0 * h;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        ce.gamma[k][i][j] = gam[k][i][j];
        ce.dgamma[0][k][i][j] =
            detail::rich1([&](double s) { return detail::fd_gamma(metric, s, y, h)[k][i][j]; }, x, H);
        ce.dgamma[1][k][i][j] =
            detail::rich1([&](double s) { return detail::fd_gamma(metric, x, s, h)[k][i][j]; }, y, H);
      }
    }
  }
  return ce;
}

inline ChristoffelEval<double> fd_christoffel(const MetricSpec& metric, double x, double y) {
  return fd_christoffel(metric, x, y, detail::spatial_step(x, y));
}

struct OracleEntry {
  double t = 0.0;
  std::string quantity;
  double jet = 0.0;
  double fd = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;  // |jet - fd| / max(1, |jet|)
  double step = 0.0;
  bool flagged = false;
  bool skipped = false;  // no room for the stencil inside the curve domain
  std::string note;
};

struct OracleReport {
  std::vector<OracleEntry> entries;
  double tolerance = 1e-4;

  std::size_t flagged_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.flagged; }));
  }
  std::size_t skipped_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.skipped; }));
  }
  double max_rel_error() const {
    double m = 0.0;
    for (const auto& e : entries) {
      if (!e.note.empty()) continue;
      m = std::max(m, e.rel_error);
    }
    return m;
  }
};

struct OracleOptions {
  double tolerance = 1e-4;
  double inner_step = 1e-2;  // alpha', alpha'' and metric partials (times max(1, |t|))
  double outer_step = 5e-2;  // derivatives of nu, kappa_r, A, psi^2 (times max(1, |t|))
};

inline constexpr double kMinOuterStep = 1e-3;

namespace detail {

// Plain-real curve geometry, each quantity built from difference quotients.
struct PlainCurve {
  const CurveSpec& curve;
  const MetricSpec& metric;
  double h_in;

  std::array<double, 2> pos(double t) const {
    const Bindings<double> vars{{"t", t}};
    return {evaluate(curve.x, vars, curve.params), evaluate(curve.y, vars, curve.params)};
  }
  std::array<double, 2> vel(double t) const {
    return {rich1([&](double s) { return pos(s)[0]; }, t, h_in), rich1([&](double s) { return pos(s)[1]; }, t, h_in)};
  }
  std::array<double, 2> acc(double t) const {
    return {rich2([&](double s) { return pos(s)[0]; }, t, h_in), rich2([&](double s) { return pos(s)[1]; }, t, h_in)};
  }
  G3 gamma(double t) const {
    const auto p = pos(t);
    return fd_gamma(metric, p[0], p[1], spatial_step(p[0], p[1]));
  }
  static std::array<double, 2> contract(const G3& g, const std::array<double, 2>& u, const std::array<double, 2>& v) {
    std::array<double, 2> out{};
    for (int k = 0; k < 2; ++k) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) out[k] += g[k][i][j] * u[i] * v[j];
      }
    }
    return out;
  }
  std::array<double, 2> cov_acc(double t) const {
    const auto v = vel(t), a = acc(t);
    const auto c = contract(gamma(t), v, v);
    return {a[0] + c[0], a[1] + c[1]};
  }
  double nu(double t) const {
    const auto p = pos(t);
    const auto g = plain_metric(metric, p[0], p[1]);
    const auto v = vel(t);
    return std::sqrt(std::fabs(g[0][0] * v[0] * v[0] + 2.0 * g[0][1] * v[0] * v[1] + g[1][1] * v[1] * v[1]));
  }
  double big_f(double t) const {
    const auto p = pos(t);
    const auto g = plain_metric(metric, p[0], p[1]);
    const double root = std::sqrt(std::fabs(g[0][0] * g[1][1] - g[0][1] * g[0][1]));
    const auto v = vel(t), a = cov_acc(t);
    return root * (v[0] * a[1] - v[1] * a[0]);
  }
  double kappa_r(double t) const {
    const double n = nu(t);
    return big_f(t) / (n * n * n);
  }
  double psi_squared(double t) const {
    const double c = std::cbrt(big_f(t));
    return 1.0 / (c * c);
  }
  std::array<double, 2> cov_acc2(double t, double h_out) const {
    const std::array<double, 2> da{rich1([&](double s) { return cov_acc(s)[0]; }, t, h_out),
                                   rich1([&](double s) { return cov_acc(s)[1]; }, t, h_out)};
    const auto c = contract(gamma(t), vel(t), cov_acc(t));
    return {da[0] + c[0], da[1] + c[1]};
  }
};

}  // namespace detail

// Compares jet-computed nu', kappa_r', kappa_r'', A, B and (psi^2)'' with the
// finite-difference oracle at each grid point.
inline OracleReport cross_validate(const CurveSpec& curve, const MetricSpec& metric, const std::vector<double>& grid,
                                   const OracleOptions& opt = {}) {
  OracleReport rep;
  rep.tolerance = opt.tolerance;
  for (double t : grid) {
    const double scale = std::max(1.0, std::fabs(t));
    double h_in = opt.inner_step * scale, h_out = opt.outer_step * scale;
    // Near the domain ends both steps shrink so the nested stencil stays inside.
    const double room = 0.9 * std::min(t - curve.a, curve.b - t);
    bool skip = false;
    if (h_out + h_in > room) {
      const double f = room / (h_out + h_in);
      h_in *= f;
      h_out *= f;
      skip = h_out < kMinOuterStep * scale;
    }
    const detail::PlainCurve pc{curve, metric, h_in};

    std::vector<std::pair<std::string, double>> jets;
    std::vector<std::pair<std::string, std::function<double()>>> fds;
    std::string skip_note;
    try {
      const CurveJets cj = curve_jets(curve, metric, t, kDefaultJetOrder);
      const Classification cls = classify(cj);
      if (cls == Classification::singular) continue;
      const Vec2<double> A = eqaff::detail::values(cov_accel(cj));
      const Vec2<double> B = cov_accel2(cj);
      jets.emplace_back("nu_prime", speed(cj)[1]);
      fds.emplace_back("nu_prime", [&] { return detail::rich1([&](double s) { return pc.nu(s); }, t, h_out); });
      jets.emplace_back("A1", A[0]);
      fds.emplace_back("A1", [&] { return pc.cov_acc(t)[0]; });
      jets.emplace_back("A2", A[1]);
      fds.emplace_back("A2", [&] { return pc.cov_acc(t)[1]; });
      jets.emplace_back("B1", B[0]);
      fds.emplace_back("B1", [&] { return pc.cov_acc2(t, h_out)[0]; });
      jets.emplace_back("B2", B[1]);
      fds.emplace_back("B2", [&] { return pc.cov_acc2(t, h_out)[1]; });
      if (cls == Classification::nondegenerate) {
        const Jet kr = kappa_r(cj);
        const Jet p = psi(cj);
        jets.emplace_back("kappa_r_prime", kr[1]);
        fds.emplace_back("kappa_r_prime",
                         [&] { return detail::rich1([&](double s) { return pc.kappa_r(s); }, t, h_out); });
        jets.emplace_back("kappa_r_double_prime", kr[2]);
        fds.emplace_back("kappa_r_double_prime",
                         [&] { return detail::rich2([&](double s) { return pc.kappa_r(s); }, t, h_out); });
        jets.emplace_back("psi2_double_prime", (p * p)[2]);
        fds.emplace_back("psi2_double_prime",
                         [&] { return detail::rich2([&](double s) { return pc.psi_squared(s); }, t, h_out); });
      }
    } catch (const ComputationError& e) {
      rep.entries.push_back({t, "evaluation", 0.0, 0.0, 0.0, 0.0, h_out, true, false, e.what()});
      continue;
    }

    if (skip) skip_note = "stencil does not fit inside the curve domain";
    for (std::size_t q = 0; q < jets.size(); ++q) {
      OracleEntry e;
      e.t = t;
      e.quantity = jets[q].first;
      e.jet = jets[q].second;
      e.step = h_out;
      if (!skip_note.empty()) {
        e.skipped = true;
        e.note = skip_note;
        rep.entries.push_back(e);
        continue;
      }
      try {
        e.fd = fds[q].second();
      } catch (const Error& err) {
        e.flagged = true;
        e.note = err.what();
        rep.entries.push_back(e);
        continue;
      }
      e.abs_error = std::fabs(e.jet - e.fd);
      e.rel_error = e.abs_error / std::max(1.0, std::fabs(e.jet));
      e.flagged = !(e.rel_error <= opt.tolerance);
      if (e.flagged) e.note = "condition: |jet| = " + format_number(std::fabs(e.jet));
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace eqaff::oracle
