#pragma once

// Curves alpha(t) = (x(t), y(t)) in a metric chart, evaluated as t-jets.
//
// With jets of order m for the coordinates: alpha' has order m-1, alpha'' and
// the covariant acceleration A = nabla_{alpha'} alpha' have order m-2, and
// B = nabla^2_{alpha'} alpha' has order m-3.

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "eqaff/errors.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/jet.hpp"
#include "eqaff/manifold.hpp"

namespace eqaff {

struct CurveSpec {
  Expr x, y;
  double a = 0.0, b = 1.0;  // open parameter domain (a, b)
  ParamEnv params;

  static CurveSpec parse(std::string_view x, std::string_view y, double a, double b, ParamEnv params = {}) {
    const auto vars = curve_variables();
    return {eqaff::parse(x, vars), eqaff::parse(y, vars), a, b, std::move(params)};
  }

  bool contains(double t) const { return t > a && t < b; }
};

inline constexpr int kDefaultJetOrder = 4;
// |g(alpha', alpha')| and |Omega(alpha', A)| are compared against this factor
// times a local scale built from |alpha'|, |A| and the metric magnitude.
inline constexpr double kClassificationFactor = 1e-10;

struct CurveJets {
  double t0 = 0.0;
  Jet x, y;
  SpatialEval<Jet> se;
  ChristoffelEval<Jet> christoffels;

  int order() const { return x.order(); }
  int omega() const { return se.omega; }
};

inline CurveJets curve_jets(const CurveSpec& curve, const MetricSpec& metric, double t,
                            int order = kDefaultJetOrder) {
  if (order < 2) throw OrderMismatch("curve jets need order >= 2");
  if (!curve.contains(t)) {
    throw DomainError("t = " + format_number(t) + " outside (" + format_number(curve.a) + ", " +
                      format_number(curve.b) + ")");
  }
  const Bindings<Jet> vars{{"t", Jet::variable(t, order)}};
  CurveJets cj;
  cj.t0 = t;
  cj.x = evaluate(curve.x, vars, curve.params);
  cj.y = evaluate(curve.y, vars, curve.params);
  cj.se = metric_eval(metric, cj.x, cj.y);
  cj.christoffels = christoffel(cj.se);
  return cj;
}

namespace detail {

inline Vec2<Jet> truncate(const Vec2<Jet>& v, int order) {
  return {eqaff::truncate(v[0], order), eqaff::truncate(v[1], order)};
}

inline Mat2<Jet> truncate(const Mat2<Jet>& m, int order) {
  return {{{eqaff::truncate(m[0][0], order), eqaff::truncate(m[0][1], order)},
           {eqaff::truncate(m[1][0], order), eqaff::truncate(m[1][1], order)}}};
}

inline Vec2<Jet> derivative(const Vec2<Jet>& v) { return {eqaff::derivative(v[0]), eqaff::derivative(v[1])}; }

inline Vec2<double> values(const Vec2<Jet>& v) { return {v[0].value(), v[1].value()}; }

inline double inf_norm(const Vec2<double>& v) { return std::max(std::fabs(v[0]), std::fabs(v[1])); }

// Gamma^k_ij u^i v^j with every jet truncated to `order`.
inline Vec2<Jet> christoffel_contract(const CurveJets& cj, const Vec2<Jet>& u, const Vec2<Jet>& v, int order) {
  Vec2<Jet> out{Jet::constant(0.0, order), Jet::constant(0.0, order)};
  const Vec2<Jet> uu = truncate(u, order), vv = truncate(v, order);
  for (int k = 0; k < 2; ++k) {
    Jet acc = Jet::constant(0.0, order);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) acc = acc + eqaff::truncate(cj.christoffels.gamma[k][i][j], order) * uu[i] * vv[j];
    }
    out[k] = acc;
  }
  return out;
}

// Covariant derivative along the curve of a vector field given as jets:
// (dV^k/dt) + Gamma^k_ij alpha'^i V^j, one order lower than V.
inline Vec2<Jet> covariant_derivative(const CurveJets& cj, const Vec2<Jet>& v);

inline double metric_scale(const Mat2<double>& g) {
  return std::max({std::fabs(g[0][0]), std::fabs(g[0][1]), std::fabs(g[1][1])});
}

inline Mat2<double> values(const Mat2<Jet>& m) {
  return {{{m[0][0].value(), m[0][1].value()}, {m[1][0].value(), m[1][1].value()}}};
}

}  // namespace detail

inline Vec2<Jet> velocity(const CurveJets& cj) { return {derivative(cj.x), derivative(cj.y)}; }

namespace detail {

inline Vec2<Jet> covariant_derivative(const CurveJets& cj, const Vec2<Jet>& v) {
  const int n = v[0].order() - 1;
  const Vec2<Jet> dv = derivative(v);
  const Vec2<Jet> corr = christoffel_contract(cj, velocity(cj), v, n);
  return {dv[0] + corr[0], dv[1] + corr[1]};
}

}  // namespace detail

// g(alpha', alpha') as a jet of order m-1.
inline Jet speed_squared_signed(const CurveJets& cj) {
  const Vec2<Jet> v = velocity(cj);
  return metric_dot(detail::truncate(cj.se.g, cj.order() - 1), v, v);
}

inline bool is_singular(const CurveJets& cj, double factor = kClassificationFactor) {
  const Vec2<double> v = detail::values(velocity(cj));
  const double scale = detail::metric_scale(detail::values(cj.se.g)) * detail::inf_norm(v) * detail::inf_norm(v);
  return !(std::fabs(speed_squared_signed(cj).value()) > factor * scale);
}

// nu = |g(alpha', alpha')|^(1/2), order m-1.
inline Jet speed(const CurveJets& cj) {
  if (is_singular(cj)) {
    throw SingularCurve("g(alpha', alpha') vanishes at t = " + format_number(cj.t0));
  }
  return abs_sqrt(speed_squared_signed(cj), 0.0);
}

// A^k = alpha''^k + Gamma^k_ij alpha'^i alpha'^j, order m-2.
inline Vec2<Jet> cov_accel(const CurveJets& cj) {
  const Vec2<Jet> v = velocity(cj);
  const Vec2<Jet> acc = detail::derivative(v);
  const Vec2<Jet> corr = detail::christoffel_contract(cj, v, v, cj.order() - 2);
  return {acc[0] + corr[0], acc[1] + corr[1]};
}

// B = nabla_{alpha'} A as jets of order m-3 (requires m >= 3).
inline Vec2<Jet> cov_accel2_jet(const CurveJets& cj) {
  if (cj.order() < 3) throw OrderMismatch("nabla^2 alpha' needs jet order >= 3");
  return detail::covariant_derivative(cj, cov_accel(cj));
}

inline Vec2<double> cov_accel2(const CurveJets& cj) { return detail::values(cov_accel2_jet(cj)); }

// F = Omega(alpha', nabla_{alpha'} alpha'), order m-2.
inline Jet affine_speed_form(const CurveJets& cj) {
  const int n = cj.order() - 2;
  return volume_form(truncate(cj.se.sqrt_abs_G, n), detail::truncate(velocity(cj), n), cov_accel(cj));
}

// Ratio of the natural scale sqrt|G| |alpha'| |A| to |F|; large means nearly geodesic.
inline double degeneracy_condition(const CurveJets& cj) {
  const Vec2<double> v = detail::values(velocity(cj));
  const Vec2<double> a = detail::values(cov_accel(cj));
  const double scale = cj.se.sqrt_abs_G.value() * detail::inf_norm(v) * detail::inf_norm(a);
  const double f = std::fabs(affine_speed_form(cj).value());
  return f > 0.0 ? scale / f : INFINITY;
}

enum class Classification { singular, geodesic, nondegenerate };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::singular: return "singular";
    case Classification::geodesic: return "geodesic";
    case Classification::nondegenerate: return "nondegenerate";
  }
  return "?";
}

inline Classification classify(const CurveJets& cj, double factor = kClassificationFactor) {
  if (is_singular(cj, factor)) return Classification::singular;
  const Vec2<double> v = detail::values(velocity(cj));
  const Vec2<double> a = detail::values(cov_accel(cj));
  const double scale = cj.se.sqrt_abs_G.value() * detail::inf_norm(v) * detail::inf_norm(a);
  const double f = affine_speed_form(cj).value();
  if (!(std::fabs(f) > factor * scale)) return Classification::geodesic;
  return Classification::nondegenerate;
}

// psi = F^(-1/3) through the real cube root; order of F.
inline Jet equi_affine_psi(const Jet& F) {
  if (!(std::fabs(F.value()) >= kDegeneracyThreshold)) {
    throw DegenerateCurve("Omega(alpha', nabla alpha') = " + format_number(F.value()));
  }
  return 1.0 / signed_cbrt(F);
}

struct FrameState {
  Vec2<double> T{}, N{};    // Frenet frame
  Vec2<double> e1{}, e2{};  // equi-affine frame
  int epsilon = 1;          // g(T, T)
  Jet nu;
};

struct FrenetFrame {
  Vec2<double> T{}, N{};
  int epsilon = 1;
  Jet nu;
};

// T = alpha'/nu, N = -omega eps J T.
inline FrenetFrame frenet_frame(const CurveJets& cj) {
  FrenetFrame f;
  f.nu = speed(cj);
  f.epsilon = speed_squared_signed(cj).value() < 0.0 ? -1 : 1;
  const Vec2<double> v = detail::values(velocity(cj));
  f.T = {v[0] / f.nu.value(), v[1] / f.nu.value()};
  const Mat2<double> J = j_components(cj.se.g[0][0].value(), cj.se.g[0][1].value(), cj.se.g[1][1].value(),
                                      cj.se.sqrt_abs_G.value(), cj.omega());
  const double s = -static_cast<double>(cj.omega() * f.epsilon);
  f.N = {s * (J[0][0] * f.T[0] + J[0][1] * f.T[1]), s * (J[1][0] * f.T[0] + J[1][1] * f.T[1])};
  return f;
}

// Adds e1 = psi alpha', e2 = psi psi' alpha' + psi^2 A.
inline FrameState frames(const CurveJets& cj) {
  const FrenetFrame fr = frenet_frame(cj);
  if (classify(cj) != Classification::nondegenerate) {
    throw DegenerateCurve("equi-affine frame undefined at t = " + format_number(cj.t0));
  }
  const Jet psi = equi_affine_psi(affine_speed_form(cj));
  const double p = psi.value(), dp = psi[1];
  const Vec2<double> v = detail::values(velocity(cj));
  const Vec2<double> a = detail::values(cov_accel(cj));
  FrameState fs;
  fs.T = fr.T;
  fs.N = fr.N;
  fs.epsilon = fr.epsilon;
  fs.nu = fr.nu;
  fs.e1 = {p * v[0], p * v[1]};
  fs.e2 = {p * dp * v[0] + p * p * a[0], p * dp * v[1] + p * p * a[1]};
  return fs;
}

// max_k |(nabla_T T)^k - kappa_r N^k| with nabla_T T = (1/nu) nabla_{alpha'} (alpha'/nu).
inline double frenet_residual(const CurveJets& cj, double kappa_r) {
  const FrenetFrame fr = frenet_frame(cj);
  const Vec2<Jet> v = velocity(cj);
  const Vec2<Jet> T{v[0] / fr.nu, v[1] / fr.nu};
  const Vec2<double> dT = detail::values(detail::covariant_derivative(cj, T));
  const double nu = fr.nu.value();
  return std::max(std::fabs(dT[0] / nu - kappa_r * fr.N[0]), std::fabs(dT[1] / nu - kappa_r * fr.N[1]));
}

struct AffineFrenetResiduals {
  double first = 0.0;   // max |nabla_{alpha'} e1 - mu e2|
  double second = 0.0;  // max |nabla_{alpha'} e2 + mu kappa_a e1|
};

inline AffineFrenetResiduals affine_frenet_residuals(const CurveJets& cj, double kappa_a) {
  if (cj.order() < 4) throw OrderMismatch("equi-affine Frenet residuals need jet order >= 4");
  const int n = cj.order() - 2;
  const Jet psi = equi_affine_psi(affine_speed_form(cj));
  const Jet dpsi = derivative(psi);
  const Vec2<Jet> v = detail::truncate(velocity(cj), n);
  const Vec2<Jet> A = cov_accel(cj);
  const Vec2<Jet> e1{psi * v[0], psi * v[1]};
  const Jet p = truncate(psi, n - 1);
  const Jet c1 = p * dpsi, c2 = p * p;
  const Vec2<Jet> e2{c1 * truncate(v[0], n - 1) + c2 * truncate(A[0], n - 1),
                     c1 * truncate(v[1], n - 1) + c2 * truncate(A[1], n - 1)};
  const double mu = 1.0 / psi.value();
  const Vec2<double> de1 = detail::values(detail::covariant_derivative(cj, e1));
  const Vec2<double> de2 = detail::values(detail::covariant_derivative(cj, e2));
  AffineFrenetResiduals r;
  r.first = std::max(std::fabs(de1[0] - mu * e2[0].value()), std::fabs(de1[1] - mu * e2[1].value()));
  r.second = std::max(std::fabs(de2[0] + mu * kappa_a * e1[0].value()),
                      std::fabs(de2[1] + mu * kappa_a * e1[1].value()));
  return r;
}

}  // namespace eqaff
