#pragma once

// Pointwise pseudo-Riemannian structure of a 2-manifold chart: metric with
// spatial partials, signature parameter omega, volume form
// Omega = sqrt|G| (dx (x) dy - dy (x) dx), the tensor J with g(X, JY) = Omega(X, Y),
// Levi-Civita Christoffel symbols and their partials, and scalar curvature.
//
// Everything is templated on the coefficient algebra S (double, or Jet when
// the point moves along a curve).

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "eqaff/bundle.hpp"
#include "eqaff/errors.hpp"
#include "eqaff/expr.hpp"
#include "eqaff/jet.hpp"

namespace eqaff {

template <class S>
using Vec2 = std::array<S, 2>;
template <class S>
using Mat2 = std::array<std::array<S, 2>, 2>;

struct MetricSpec {
  Expr g11, g12, g22;
  ParamEnv params;

  static MetricSpec parse(std::string_view g11, std::string_view g12, std::string_view g22,
                          ParamEnv params = {}) {
    const auto vars = metric_variables();
    return {eqaff::parse(g11, vars), eqaff::parse(g12, vars), eqaff::parse(g22, vars), std::move(params)};
  }
};

// Relative threshold: the metric is degenerate when |G| < factor * (max |g_ij|)^2.
inline constexpr double kDegenerateMetricFactor = 1e-12;

template <class S>
struct SpatialEval {
  S x, y;
  Mat2<S> g;                          // g[i][j]
  std::array<Mat2<S>, 2> dg;          // dg[k][i][j] = d_k g_ij
  std::array<std::array<Mat2<S>, 2>, 2> ddg;  // ddg[k][l][i][j] = d_k d_l g_ij
  S G;                                // g11 g22 - g12^2
  S sqrt_abs_G;
  int omega = 1;                      // sign(G)
};

template <class S>
struct ChristoffelEval {
  std::array<Mat2<S>, 2> gamma;                  // gamma[k][i][j] = Gamma^k_ij
  std::array<std::array<Mat2<S>, 2>, 2> dgamma;  // dgamma[l][k][i][j] = d_l Gamma^k_ij
};

template <class S>
struct JTensor {
  Mat2<S> J;  // J[i][j] = J^i_j
};

namespace detail {

template <class S>
SpatialBundle<S> metric_component_bundle(const SpatialEval<S>& se, int i, int j) {
  return {se.g[i][j], se.dg[0][i][j], se.dg[1][i][j], se.ddg[0][0][i][j], se.ddg[0][1][i][j],
          se.ddg[1][1][i][j]};
}

}  // namespace detail

template <class S>
SpatialEval<S> metric_eval(const MetricSpec& spec, const S& x, const S& y,
                           double degeneracy_factor = kDegenerateMetricFactor) {
  using B = SpatialBundle<S>;
  const Bindings<B> vars{{"x", B::x_coordinate(x)}, {"y", B::y_coordinate(y)}};
  const B b11 = evaluate(spec.g11, vars, spec.params);
  const B b12 = evaluate(spec.g12, vars, spec.params);
  const B b22 = evaluate(spec.g22, vars, spec.params);

  SpatialEval<S> se{x, y, {}, {}, {}, {}, {}, 1};
  const std::array<std::array<const B*, 2>, 2> comp{{{&b11, &b12}, {&b12, &b22}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const B& b = *comp[i][j];
      se.g[i][j] = b.v;
      se.dg[0][i][j] = b.dx;
      se.dg[1][i][j] = b.dy;
      se.ddg[0][0][i][j] = b.dxx;
      se.ddg[0][1][i][j] = b.dxy;
      se.ddg[1][0][i][j] = b.dxy;
      se.ddg[1][1][i][j] = b.dyy;
    }
  }
  se.G = b11.v * b22.v - b12.v * b12.v;
  const double scale =
      std::max({std::fabs(leading(b11.v)), std::fabs(leading(b12.v)), std::fabs(leading(b22.v))});
  const double G0 = leading(se.G);
  if (!(std::isfinite(G0) && std::fabs(G0) > degeneracy_factor * scale * scale)) {
    throw DegenerateMetric("det g = " + format_number(G0) + " at (" + format_number(leading(x)) + ", " +
                           format_number(leading(y)) + ")");
  }
  se.omega = G0 < 0.0 ? -1 : 1;
  se.sqrt_abs_G = abs_sqrt(se.G, 0.0);
  return se;
}

template <class S>
Mat2<S> inverse_metric(const SpatialEval<S>& se) {
  const S inv_G = constant_like(se.G, 1.0) / se.G;
  return {{{se.g[1][1] * inv_G, -(se.g[0][1] * inv_G)}, {-(se.g[0][1] * inv_G), se.g[0][0] * inv_G}}};
}

template <class S>
ChristoffelEval<S> christoffel(const SpatialEval<S>& se) {
  const S zero = constant_like(se.G, 0.0);
  const Mat2<S> ginv = inverse_metric(se);

  // First kind, Gamma_{l i j} and its partials.
  std::array<Mat2<S>, 2> first{};
  std::array<std::array<Mat2<S>, 2>, 2> dfirst{};  // [m][l][i][j]
  for (int l = 0; l < 2; ++l) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        first[l][i][j] = 0.5 * (se.dg[i][j][l] + se.dg[j][i][l] - se.dg[l][i][j]);
        for (int m = 0; m < 2; ++m) {
          dfirst[m][l][i][j] = 0.5 * (se.ddg[m][i][j][l] + se.ddg[m][j][i][l] - se.ddg[m][l][i][j]);
        }
      }
    }
  }

  // d_m g^{kl} = -g^{ka} d_m g_ab g^{bl}
  std::array<Mat2<S>, 2> dginv{};
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        S acc = zero;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) acc = acc + ginv[k][a] * se.dg[m][a][b] * ginv[b][l];
        }
        dginv[m][k][l] = -acc;
      }
    }
  }

  ChristoffelEval<S> ce{};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = i; j < 2; ++j) {
        S acc = zero;
        for (int l = 0; l < 2; ++l) acc = acc + ginv[k][l] * first[l][i][j];
        ce.gamma[k][i][j] = acc;
        ce.gamma[k][j][i] = acc;
        for (int m = 0; m < 2; ++m) {
          S dacc = zero;
          for (int l = 0; l < 2; ++l) {
            dacc = dacc + dginv[m][k][l] * first[l][i][j] + ginv[k][l] * dfirst[m][l][i][j];
          }
          ce.dgamma[m][k][i][j] = dacc;
          ce.dgamma[m][k][j][i] = dacc;
        }
      }
    }
  }
  return ce;
}

// J^1_1 = -J^2_2 = omega g12 / sqrt|G|, J^2_1 = -omega g11 / sqrt|G|, J^1_2 = omega g22 / sqrt|G|.
template <class R>
Mat2<R> j_components(const R& g11, const R& g12, const R& g22, const R& sqrt_abs_G, int omega) {
  const R w = static_cast<double>(omega) * (constant_like(sqrt_abs_G, 1.0) / sqrt_abs_G);
  return {{{w * g12, w * g22}, {-(w * g11), -(w * g12)}}};
}

template <class S>
JTensor<S> j_tensor(const SpatialEval<S>& se) {
  return {j_components(se.g[0][0], se.g[0][1], se.g[1][1], se.sqrt_abs_G, se.omega)};
}

// Omega(u, v) = sqrt|G| (u^1 v^2 - u^2 v^1)
template <class S, class U, class V>
auto volume_form(const S& sqrt_abs_G, const Vec2<U>& u, const Vec2<V>& v) {
  return sqrt_abs_G * (u[0] * v[1] - u[1] * v[0]);
}

template <class S, class U, class V>
auto metric_dot(const Mat2<S>& g, const Vec2<U>& u, const Vec2<V>& v) {
  return g[0][0] * (u[0] * v[0]) + g[0][1] * (u[0] * v[1] + u[1] * v[0]) + g[1][1] * (u[1] * v[1]);
}

// Scalar curvature = 2K with K = g_{1l} R^l_{122} / G and
// R^l_{ijk} = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik.
template <class S>
S scalar_curvature(const SpatialEval<S>& se, const ChristoffelEval<S>& ce) {
  const auto& G = ce.gamma;
  const auto& dG = ce.dgamma;
  const S zero = constant_like(se.G, 0.0);
  Vec2<S> r{zero, zero};  // R^l_{122}
  for (int l = 0; l < 2; ++l) {
    S acc = dG[0][l][1][1] - dG[1][l][0][1];
    for (int m = 0; m < 2; ++m) acc = acc + G[l][0][m] * G[m][1][1] - G[l][1][m] * G[m][0][1];
    r[l] = acc;
  }
  const S r1212 = se.g[0][0] * r[0] + se.g[0][1] * r[1];
  return 2.0 * (r1212 / se.G);
}

template <class S>
S gauss_curvature(const SpatialEval<S>& se) {
  return 0.5 * scalar_curvature(se, christoffel(se));
}

struct StructureReport {
  double x = 0.0, y = 0.0;
  int omega = 1;
  double j_squared = 0.0;     // max |J^2 + omega Id|
  double omega_j = 0.0;       // max over basis X, Y of |Omega(X, JY) + omega g(X, Y)|
  double nabla_j = 0.0;       // max |(nabla_k J)^i_j|
  double nabla_omega = 0.0;   // max |(nabla_k Omega)_12|
  double scalar_curvature = 0.0;

  double max_residual() const { return std::max({j_squared, omega_j, nabla_j, nabla_omega}); }
};

inline StructureReport structure_check(const MetricSpec& spec, double x, double y) {
  const auto se = metric_eval(spec, x, y);
  const auto ce = christoffel(se);
  const auto& Gam = ce.gamma;
  const double w = se.omega;

  StructureReport rep;
  rep.x = x;
  rep.y = y;
  rep.omega = se.omega;
  rep.scalar_curvature = scalar_curvature(se, ce);

  // J evaluated on bundles, so its spatial partials come out exactly.
  using B = SpatialBundle<double>;
  const B b11 = detail::metric_component_bundle(se, 0, 0);
  const B b12 = detail::metric_component_bundle(se, 0, 1);
  const B b22 = detail::metric_component_bundle(se, 1, 1);
  const B sqrt_abs_G = abs_sqrt(b11 * b22 - b12 * b12, 0.0);
  const Mat2<B> Jb = j_components(b11, b12, b22, sqrt_abs_G, se.omega);

  Mat2<double> J{}, dJ[2]{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      J[i][j] = Jb[i][j].v;
      dJ[0][i][j] = Jb[i][j].dx;
      dJ[1][i][j] = Jb[i][j].dy;
    }
  }

  const Mat2<double> Om{{{0.0, se.sqrt_abs_G}, {-se.sqrt_abs_G, 0.0}}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double jj = J[i][0] * J[0][j] + J[i][1] * J[1][j] + (i == j ? w : 0.0);
      rep.j_squared = std::max(rep.j_squared, std::fabs(jj));
      const double oj = Om[i][0] * J[0][j] + Om[i][1] * J[1][j] + w * se.g[i][j];
      rep.omega_j = std::max(rep.omega_j, std::fabs(oj));
    }
  }

  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double v = dJ[k][i][j];
        for (int m = 0; m < 2; ++m) v += Gam[i][k][m] * J[m][j] - Gam[m][k][j] * J[i][m];
        rep.nabla_j = std::max(rep.nabla_j, std::fabs(v));
      }
    }
    const double d_sqrt = k == 0 ? sqrt_abs_G.dx : sqrt_abs_G.dy;
    const double v = d_sqrt - (Gam[0][k][0] + Gam[1][k][1]) * se.sqrt_abs_G;
    rep.nabla_omega = std::max(rep.nabla_omega, std::fabs(v));
  }
  return rep;
}

}  // namespace eqaff
