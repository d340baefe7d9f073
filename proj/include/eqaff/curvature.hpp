#pragma once

// Frenet and equi-affine curvatures of a curve in a pseudo-Riemannian chart.
//
// kappa_r = F / nu^3 with F = Omega(alpha', A), nu = |g(alpha', alpha')|^(1/2).
// kappa_a is computed two independent ways: intrinsically from psi = F^(-1/3)
// and the covariant accelerations A, B, and from the jet of kappa_r through
// the Frenet-curvature relation. All fractional powers of F and kappa_r go
// through the real cube root.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

#include "eqaff/curve.hpp"
#include "eqaff/errors.hpp"
#include "eqaff/jet.hpp"
#include "eqaff/manifold.hpp"
#include "eqaff/quadrature.hpp"

namespace eqaff {

// |kappa_r| below this makes the relation undefined (kappa_r^(-8/3) blows up).
inline constexpr double kGeodesicRelationThreshold = 1e-8;

inline Jet psi(const CurveJets& cj) { return equi_affine_psi(affine_speed_form(cj)); }

// mu = sigma' = F^(1/3)
inline Jet mu(const CurveJets& cj) {
  const Jet F = affine_speed_form(cj);
  equi_affine_psi(F);
  return signed_cbrt(F);
}

// kappa_r as a jet of order m-2.
inline Jet kappa_r(const CurveJets& cj) {
  const int n = cj.order() - 2;
  const Jet nu = truncate(speed(cj), n);
  return affine_speed_form(cj) / (nu * nu * nu);
}

inline double kappa_a_intrinsic(const CurveJets& cj) {
  if (cj.order() < 4) throw OrderMismatch("kappa_a needs jet order >= 4");
  if (classify(cj) != Classification::nondegenerate) {
    throw DegenerateCurve("kappa_a undefined at t = " + format_number(cj.t0));
  }
  const Jet p = psi(cj);
  const Jet p2 = p * p;
  const Vec2<double> A = detail::values(cov_accel(cj));
  const Vec2<double> B = cov_accel2(cj);
  const double omega_ab = volume_form(cj.se.sqrt_abs_G.value(), A, B);
  const double p0 = p.value();
  const double p5 = p0 * p0 * p0 * p0 * p0;
  return -0.5 * p2[2] + p5 * omega_ab;
}

inline double kappa_a_via_relation(const Jet& kr, const Jet& nu, int omega,
                                   double threshold = kGeodesicRelationThreshold) {
  if (kr.order() < 2 || nu.order() < 1) throw OrderMismatch("relation needs kappa_r'' and nu'");
  const double k = kr.value(), dk = kr[1], ddk = kr[2];
  if (!(std::fabs(k) >= threshold)) {
    throw GeodesicRelationUndefined("|kappa_r| = " + format_number(std::fabs(k)));
  }
  const double n = nu.value(), dn = nu[1];
  const double r = std::cbrt(k);
  const double r2 = r * r, r4 = r2 * r2, r8 = r4 * r4;
  const double inv_n2 = 1.0 / (n * n), inv_n3 = inv_n2 / n;
  const double k4 = k * k * k * k;
  const double bracket = 3.0 * inv_n2 * k * ddk - 5.0 * inv_n2 * dk * dk - 3.0 * inv_n3 * dn * k * dk +
                         9.0 * omega * k4;
  return bracket / (9.0 * r8);
}

// Re-expresses a kappa_r jet in t as a jet in the metric arclength s.
inline Jet to_arclength(const Jet& kr, const Jet& nu) {
  if (kr.order() < 2 || nu.order() < 1) throw OrderMismatch("need kappa_r'' and nu'");
  const double n = nu.value(), dn = nu[1];
  return Jet{kr.value(), kr[1] / n, (kr[2] * n - kr[1] * dn) / (n * n * n)};
}

// For a kappa_r jet taken with respect to arclength. Both closed forms are
// evaluated and must agree.
inline double kappa_a_arclength(const Jet& kr, int omega, double threshold = kGeodesicRelationThreshold) {
  if (kr.order() < 2) throw OrderMismatch("relation needs kappa_r''");
  const Jet k = truncate(kr, 2);
  if (!(std::fabs(k.value()) >= threshold)) {
    throw GeodesicRelationUndefined("|kappa_r| = " + format_number(std::fabs(k.value())));
  }
  const double r = std::cbrt(k.value());
  const double r4 = r * r * r * r, r8 = r4 * r4;
  const double k4 = k.value() * k.value() * k.value() * k.value();
  const double first = (3.0 * k.value() * k[2] - 5.0 * k[1] * k[1] + 9.0 * omega * k4) / (9.0 * r8);
  const Jet cr = signed_cbrt(k, 0.0);
  const Jet q = 1.0 / (cr * cr);  // kappa_r^(-2/3)
  const double second = -0.5 * q[2] + omega * r4;
  const double scale = std::max({1.0, std::fabs(first), std::fabs(0.5 * q[2]), r4});
  if (!(std::fabs(first - second) <= 1e-10 * scale)) {
    throw InternalInconsistency("arclength relation forms disagree: " + format_number(first) + " vs " +
                                format_number(second));
  }
  return first;
}

// psi^2 B + 3 psi psi' A + (psi'^2 + psi psi'' + kappa_a) alpha'
inline Vec2<double> ode_residual(const CurveJets& cj, double kappa_a) {
  const Jet p = psi(cj);
  const double p0 = p.value(), p1 = p[1], p2 = p[2];
  const Vec2<double> v = detail::values(velocity(cj));
  const Vec2<double> A = detail::values(cov_accel(cj));
  const Vec2<double> B = cov_accel2(cj);
  const double c = p1 * p1 + p0 * p2 + kappa_a;
  return {p0 * p0 * B[0] + 3.0 * p0 * p1 * A[0] + c * v[0], p0 * p0 * B[1] + 3.0 * p0 * p1 * A[1] + c * v[1]};
}

// Sum of the magnitudes of the three terms of ode_residual.
inline double ode_residual_scale(const CurveJets& cj, double kappa_a) {
  const Jet p = psi(cj);
  const double p0 = p.value(), p1 = p[1], p2 = p[2];
  const Vec2<double> v = detail::values(velocity(cj));
  const Vec2<double> A = detail::values(cov_accel(cj));
  const Vec2<double> B = cov_accel2(cj);
  return p0 * p0 * detail::inf_norm(B) + 3.0 * std::fabs(p0 * p1) * detail::inf_norm(A) +
         (p1 * p1 + std::fabs(p0 * p2) + std::fabs(kappa_a)) * detail::inf_norm(v);
}

struct CurvatureSample {
  double t = 0.0;
  double x = 0.0, y = 0.0;
  Classification classification = Classification::singular;
  int orientation = 0;  // sign of Omega(alpha', A) for nondegenerate samples
  double condition = INFINITY;

  std::optional<double> nu, nu_prime;
  std::optional<double> kappa_r, kappa_r_prime, kappa_r_double_prime;
  std::optional<double> psi, psi_prime, psi_double_prime, mu;
  std::optional<double> kappa_a_intrinsic, kappa_a_relation, relation_residual;
  std::optional<Vec2<double>> ode_residual;
  std::optional<double> ode_residual_norm;  // |ode_residual| / ode_residual_scale
  std::optional<double> frenet_residual;
  std::optional<double> affine_frenet_residual;
};

struct SampleOptions {
  int jet_order = kDefaultJetOrder;
  unsigned threads = 0;               // 0: hardware concurrency
  bool flip_relation_omega = false;   // debug: evaluate the relation with -omega
};

inline CurvatureSample sample_at(const CurveSpec& curve, const MetricSpec& metric, double t,
                                 const SampleOptions& opt = {}) {
  const CurveJets cj = curve_jets(curve, metric, t, opt.jet_order);
  CurvatureSample s;
  s.t = t;
  s.x = cj.x.value();
  s.y = cj.y.value();
  s.classification = classify(cj);
  if (s.classification == Classification::singular) return s;

  const Jet nu = speed(cj);
  const Jet kr = kappa_r(cj);
  s.nu = nu.value();
  s.nu_prime = nu[1];
  if (s.classification == Classification::geodesic) {
    s.kappa_r = 0.0;
    s.kappa_r_prime = 0.0;
    s.kappa_r_double_prime = 0.0;
    s.frenet_residual = frenet_residual(cj, 0.0);
    return s;
  }
  s.kappa_r = kr.value();
  s.kappa_r_prime = kr[1];
  s.kappa_r_double_prime = kr[2];
  s.frenet_residual = frenet_residual(cj, kr.value());

  s.condition = degeneracy_condition(cj);
  try {
    const Jet F = affine_speed_form(cj);
    s.orientation = F.value() < 0.0 ? -1 : 1;
    const Jet p = psi(cj);
    s.psi = p.value();
    s.psi_prime = p[1];
    s.psi_double_prime = p[2];
    s.mu = 1.0 / p.value();
    const double ka = kappa_a_intrinsic(cj);
    s.kappa_a_intrinsic = ka;
    const Vec2<double> res = ode_residual(cj, ka);
    s.ode_residual = res;
    const double scale = ode_residual_scale(cj, ka);
    s.ode_residual_norm = detail::inf_norm(res) / (scale > 0.0 ? scale : 1.0);
    const auto afr = affine_frenet_residuals(cj, ka);
    s.affine_frenet_residual = std::max(afr.first, afr.second);
    const int w = opt.flip_relation_omega ? -cj.omega() : cj.omega();
    const double kr_rel = kappa_a_via_relation(kr, nu, w);
    s.kappa_a_relation = kr_rel;
    s.relation_residual = std::fabs(ka - kr_rel);
  } catch (const DegenerateCurve&) {
  } catch (const DegenerateJet&) {
  } catch (const GeodesicRelationUndefined&) {
  }
  return s;
}

// Samples are independent; results come back in grid order regardless of threads.
inline std::vector<CurvatureSample> sample_curve(const CurveSpec& curve, const MetricSpec& metric,
                                                 const std::vector<double>& grid, const SampleOptions& opt = {}) {
  if (grid.empty()) throw InputError("empty t grid");
  if (opt.jet_order < 4 || opt.jet_order > Jet::kMaxOrder) throw InputError("jet order must be in [4, 12]");
  for (double t : grid) {
    if (!curve.contains(t)) throw InputError("grid point " + format_number(t) + " outside the curve domain");
  }
  std::vector<CurvatureSample> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  unsigned n_threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(grid.size()));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        out[i] = sample_at(curve, metric, grid[i], opt);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct ReparamTable {
  std::vector<double> t, s, sigma;
  std::vector<double> s_error, sigma_error;
  bool s_monotone = true;
  bool sigma_monotone = true;
};

// s(t) = int_{t0}^t nu, sigma(t) = int_{t0}^t cbrt(Omega(alpha', A)).
inline ReparamTable reparametrize(const CurveSpec& curve, const MetricSpec& metric, double t0,
                                  const std::vector<double>& grid, const QuadratureOptions& qopt = {}) {
  if (!curve.contains(t0)) throw InputError("t0 outside the curve domain");
  for (double t : grid) {
    if (!curve.contains(t)) throw InputError("grid point " + format_number(t) + " outside the curve domain");
  }
  const auto speed_at = [&](double u) {
    const CurveJets cj = curve_jets(curve, metric, u, 2);
    return speed(cj).value();
  };
  const auto sigma_rate_at = [&](double u) {
    const CurveJets cj = curve_jets(curve, metric, u, 2);
    if (classify(cj) != Classification::nondegenerate) {
      throw DegenerateCurve("sigma' undefined at t = " + format_number(u));
    }
    return std::cbrt(affine_speed_form(cj).value());
  };

  // Integrate outward from t0 over consecutive sorted points so each piece is done once.
  std::vector<std::size_t> order(grid.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });

  ReparamTable tab;
  tab.t = grid;
  tab.s.assign(grid.size(), 0.0);
  tab.sigma.assign(grid.size(), 0.0);
  tab.s_error.assign(grid.size(), 0.0);
  tab.sigma_error.assign(grid.size(), 0.0);

  const auto sweep = [&](auto begin, auto end) {
    double prev = t0, s = 0.0, sig = 0.0, es = 0.0, esig = 0.0;
    for (auto it = begin; it != end; ++it) {
      const double t = grid[*it];
      const auto rs = adaptive_simpson(speed_at, prev, t, qopt);
      const auto rsig = adaptive_simpson(sigma_rate_at, prev, t, qopt);
      s += rs.value;
      sig += rsig.value;
      es += rs.error_estimate;
      esig += rsig.error_estimate;
      tab.s[*it] = s;
      tab.sigma[*it] = sig;
      tab.s_error[*it] = es;
      tab.sigma_error[*it] = esig;
      prev = t;
    }
  };
  const auto split = std::partition_point(order.begin(), order.end(), [&](std::size_t i) { return grid[i] < t0; });
  sweep(split, order.end());
  sweep(std::make_reverse_iterator(split), order.rend());

  for (std::size_t k = 1; k < order.size(); ++k) {
    const std::size_t i = order[k - 1], j = order[k];
    if (grid[i] == grid[j]) continue;
    if (!(tab.s[j] > tab.s[i])) tab.s_monotone = false;
    const double d = tab.sigma[j] - tab.sigma[i];
    const double d0 = tab.sigma[order[1]] - tab.sigma[order[0]];
    if (d == 0.0 || (d > 0.0) != (d0 > 0.0)) tab.sigma_monotone = false;
  }
  return tab;
}

}  // namespace eqaff
