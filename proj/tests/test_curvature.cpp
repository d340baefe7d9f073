#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eqaff/catalog.hpp"
#include "eqaff/curvature.hpp"
#include "random_scenarios.hpp"

using eqaff::Classification;
using eqaff::CurveSpec;
using eqaff::Jet;
using eqaff::MetricSpec;

namespace {

MetricSpec inverse_cube_metric(int omega) {
  return MetricSpec::parse("x^(-3)", "0", omega > 0 ? "x^(-3)" : "-x^(-3)");
}
MetricSpec euclid() { return MetricSpec::parse("1", "0", "1"); }
MetricSpec minkowski() { return MetricSpec::parse("1", "0", "-1"); }

CurveSpec example_i(double lambda) { return CurveSpec::parse("lambda", "t", -10, 10, {{"lambda", lambda}}); }
CurveSpec example_ii(double lambda) {
  return CurveSpec::parse("lambda*cos(t)", "y0 + lambda*sin(t)", -1.5707963267948966, 1.5707963267948966,
                          {{"lambda", lambda}, {"y0", 0.0}});
}
CurveSpec example_iii(double lambda) {
  return CurveSpec::parse("lambda*cosh(t)", "y0 + lambda*sinh(t)", -10, 10, {{"lambda", lambda}, {"y0", 0.0}});
}
CurveSpec circle(double r) { return CurveSpec::parse("R*cos(t)", "R*sin(t)", -3.2, 3.2, {{"R", r}}); }
CurveSpec parabola() { return CurveSpec::parse("t", "t^2/2", -5, 5); }
CurveSpec hyperbola() { return CurveSpec::parse("cosh(t)", "sinh(t)", -5, 5); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

}  // namespace

TEST(Psi, Examples) {
  const auto cj = eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.0, 4);
  EXPECT_NEAR(eqaff::affine_speed_form(cj).value(), -1.5, 1e-15);
  EXPECT_NEAR(eqaff::psi(cj).value(), -0.8735804647362989, 1e-14);

  const Jet pp = eqaff::psi(eqaff::curve_jets(parabola(), euclid(), 0.7, 4));
  EXPECT_NEAR(pp[0], 1.0, 1e-15);
  EXPECT_NEAR(pp[1], 0.0, 1e-15);
  EXPECT_NEAR(pp[2], 0.0, 1e-15);

  const auto cc = eqaff::curve_jets(circle(2), euclid(), 0.4, 4);
  EXPECT_NEAR(eqaff::affine_speed_form(cc).value(), 4.0, 1e-14);
  const Jet pc = eqaff::psi(cc);
  EXPECT_NEAR(pc[0], 0.6299605249474366, 1e-14);
  EXPECT_NEAR(pc[1], 0.0, 1e-14);
  EXPECT_NEAR(eqaff::mu(cc).value() * pc[0], 1.0, 1e-15);
}

TEST(Psi, GeodesicThrows) {
  const auto cj = eqaff::curve_jets(CurveSpec::parse("t", "0", -5, 5), euclid(), 0.0, 4);
  EXPECT_THROW(eqaff::psi(cj), eqaff::DegenerateCurve);
}

TEST(KappaR, Examples) {
  const Jet k1 = eqaff::kappa_r(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 1.0, 4));
  EXPECT_NEAR(k1[0], -1.5, 1e-14);
  EXPECT_NEAR(k1[1], 0.0, 1e-14);
  EXPECT_NEAR(k1[2], 0.0, 1e-14);

  const Jet k2 = eqaff::kappa_r(eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), 0.0, 4));
  EXPECT_NEAR(k2[0], -1.0, 1e-14);
  EXPECT_NEAR(k2[1], 0.0, 1e-14);
  EXPECT_NEAR(k2[2], 1.5, 1e-13);

  const Jet k3 = eqaff::kappa_r(eqaff::curve_jets(example_iii(4), inverse_cube_metric(-1), 0.0, 4));
  EXPECT_NEAR(k3[0], 1.0, 1e-14);
  EXPECT_NEAR(k3[1], 0.0, 1e-14);
  EXPECT_NEAR(k3[2], 1.5, 1e-13);

  const Jet kl = eqaff::kappa_r(eqaff::curve_jets(CurveSpec::parse("t", "0", -5, 5), euclid(), 1.0, 4));
  EXPECT_EQ(kl[0], 0.0);
  EXPECT_EQ(kl[1], 0.0);
}

TEST(KappaAIntrinsic, Examples) {
  EXPECT_NEAR(eqaff::kappa_a_intrinsic(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), -2.0, 4)),
              std::pow(1.5, 4.0 / 3.0), 1e-13);
  for (double t : {-1.4, -0.5, 0.0, 0.9, 1.5}) {
    EXPECT_NEAR(eqaff::kappa_a_intrinsic(eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), t, 4)), -1.0, 1e-9)
        << "t=" << t;
  }
  EXPECT_NEAR(eqaff::kappa_a_intrinsic(eqaff::curve_jets(parabola(), euclid(), 1.3, 4)), 0.0, 1e-15);
  EXPECT_THROW(eqaff::kappa_a_intrinsic(eqaff::curve_jets(parabola(), euclid(), 1.3, 3)), eqaff::OrderMismatch);
}

TEST(KappaAViaRelation, Examples) {
  EXPECT_NEAR(eqaff::kappa_a_via_relation(Jet{-1, 0, 1.5}, Jet{0.5, 0}, 1), -1.0, 1e-15);
  EXPECT_NEAR(eqaff::kappa_a_via_relation(Jet{1, 0, 1.5}, Jet{0.5, 0}, -1), 1.0, 1e-15);
  for (double c : {0.3, 2.0, 7.5}) {
    for (int w : {1, -1}) {
      EXPECT_NEAR(eqaff::kappa_a_via_relation(Jet{c, 0, 0}, Jet{3.7, -1.2}, w), w * std::pow(c, 4.0 / 3.0),
                  1e-13 * std::pow(c, 4.0 / 3.0));
    }
  }
  EXPECT_THROW(eqaff::kappa_a_via_relation(Jet{1e-10, 0, 0}, Jet{1, 0}, 1), eqaff::GeodesicRelationUndefined);
}

TEST(KappaAArclength, Examples) {
  for (double c : {-2.0, 0.5, 3.0}) {
    for (int w : {1, -1}) {
      const double r = std::cbrt(c);
      EXPECT_NEAR(eqaff::kappa_a_arclength(Jet{c, 0, 0}, w), w * r * r * r * r, 1e-13);
    }
  }
  // Minkowski hyperbola is unit speed with kappa_r = -1.
  const auto cj = eqaff::curve_jets(hyperbola(), minkowski(), 0.8, 4);
  const Jet kr = eqaff::kappa_r(cj);
  EXPECT_NEAR(kr[0], -1.0, 1e-12);
  EXPECT_NEAR(eqaff::kappa_a_arclength(kr, cj.omega()), -1.0, 1e-12);
  // Unit circle
  const auto uc = eqaff::curve_jets(circle(1), euclid(), 0.8, 4);
  EXPECT_NEAR(eqaff::kappa_a_arclength(eqaff::kappa_r(uc), 1), 1.0, 1e-12);
  EXPECT_THROW(eqaff::kappa_a_arclength(Jet{0, 1, 0}, 1), eqaff::GeodesicRelationUndefined);
}

TEST(OdeResidual, VanishesForIntrinsicKappa) {
  for (double t : {-1.0, 0.0, 0.6}) {
    const auto cj = eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), t, 4);
    const double ka = eqaff::kappa_a_intrinsic(cj);
    const auto r = eqaff::ode_residual(cj, ka);
    EXPECT_LT(eqaff::detail::inf_norm(r), 1e-8 * eqaff::ode_residual_scale(cj, ka));
  }
}

TEST(OdeResidual, ConstantPsiForm) {
  // psi is constant on example (i): psi^2 B + kappa_a alpha' = 0 with the closed-form kappa_a
  const auto cj = eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.5, 4);
  const Jet p = eqaff::psi(cj);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);
  const double ka = std::pow(3.0, 4.0 / 3.0) / std::pow(2.0, 4.0 / 3.0);
  const auto B = eqaff::cov_accel2(cj);
  const auto v = eqaff::detail::values(eqaff::velocity(cj));
  EXPECT_LT(std::fabs(p[0] * p[0] * B[0] + ka * v[0]), 1e-8);
  EXPECT_LT(std::fabs(p[0] * p[0] * B[1] + ka * v[1]), 1e-8);
  EXPECT_LT(eqaff::detail::inf_norm(eqaff::ode_residual(cj, ka)), 1e-8);
}

TEST(OdeResidual, DetectsPerturbedKappa) {
  const auto cj = eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), 0.3, 4);
  const double ka = eqaff::kappa_a_intrinsic(cj);
  const auto r = eqaff::ode_residual(cj, ka + 0.1);
  const auto v = eqaff::detail::values(eqaff::velocity(cj));
  EXPECT_NEAR(r[0], 0.1 * v[0], 1e-9);
  EXPECT_NEAR(r[1], 0.1 * v[1], 1e-9);
  EXPECT_GT(eqaff::detail::inf_norm(r), 0.05 * eqaff::detail::inf_norm(v));
}

TEST(Reparametrize, EuclideanCircleAndParabola) {
  const auto grid = linspace(-3, 3, 13);
  const auto tab = eqaff::reparametrize(circle(2), euclid(), 0.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(tab.s[i], 2.0 * grid[i], 1e-10);
    EXPECT_NEAR(tab.sigma[i], std::cbrt(4.0) * grid[i], 1e-10);
  }
  EXPECT_TRUE(tab.s_monotone);
  EXPECT_TRUE(tab.sigma_monotone);

  const auto pt = eqaff::reparametrize(parabola(), euclid(), 0.0, linspace(-2, 2, 9));
  for (std::size_t i = 0; i < pt.t.size(); ++i) EXPECT_NEAR(pt.sigma[i], pt.t[i], 1e-10);
}

TEST(Reparametrize, ExampleISigmaSlope) {
  const auto grid = linspace(-5, 5, 11);
  const auto tab = eqaff::reparametrize(example_i(1), inverse_cube_metric(1), 0.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(tab.sigma[i], std::cbrt(-1.5) * grid[i], 1e-8);
    EXPECT_NEAR(tab.s[i], grid[i], 1e-10);
  }
}

TEST(Reparametrize, Errors) {
  EXPECT_THROW(eqaff::reparametrize(circle(1), euclid(), 5.0, {0.0}), eqaff::InputError);
  EXPECT_THROW(eqaff::reparametrize(CurveSpec::parse("t", "0", -5, 5), euclid(), 0.0, {1.0}),
               eqaff::DegenerateCurve);
}

TEST(SampleCurve, ExampleII) {
  const auto samples = eqaff::sample_curve(example_ii(4), inverse_cube_metric(1), linspace(-1.2, 1.2, 101));
  ASSERT_EQ(samples.size(), 101u);
  for (const auto& s : samples) {
    ASSERT_EQ(s.classification, Classification::nondegenerate);
    EXPECT_NEAR(*s.kappa_a_intrinsic, -1.0, 1e-8);
    EXPECT_LT(*s.relation_residual, 1e-7);
    EXPECT_NEAR(*s.kappa_r, -std::pow(std::cos(s.t), 1.5), 1e-9);
    EXPECT_EQ(s.orientation, -1);
  }
}

TEST(SampleCurve, ExampleIII) {
  const auto samples = eqaff::sample_curve(example_iii(4), inverse_cube_metric(-1), linspace(-2, 2, 101));
  for (const auto& s : samples) {
    EXPECT_NEAR(*s.kappa_r, std::pow(std::cosh(s.t), 1.5), 1e-9);
    EXPECT_NEAR(*s.kappa_a_intrinsic, 1.0, 1e-8);
  }
}

TEST(SampleCurve, StraightLineIsFlaggedGeodesic) {
  const auto samples = eqaff::sample_curve(CurveSpec::parse("t", "0", -5, 5), euclid(), linspace(-2, 2, 7));
  for (const auto& s : samples) {
    EXPECT_EQ(s.classification, Classification::geodesic);
    EXPECT_EQ(*s.kappa_r, 0.0);
    EXPECT_FALSE(s.kappa_a_intrinsic.has_value());
    EXPECT_FALSE(s.kappa_a_relation.has_value());
    EXPECT_FALSE(s.relation_residual.has_value());
  }
}

TEST(SampleCurve, LightlikeCurveIsFlaggedSingular) {
  const auto samples = eqaff::sample_curve(CurveSpec::parse("t", "t", -1, 1), minkowski(), {0.0, 0.5});
  for (const auto& s : samples) {
    EXPECT_EQ(s.classification, Classification::singular);
    EXPECT_FALSE(s.nu.has_value());
  }
}

TEST(SampleCurve, ConfigurationErrors) {
  EXPECT_THROW(eqaff::sample_curve(circle(1), euclid(), {}), eqaff::InputError);
  EXPECT_THROW(eqaff::sample_curve(circle(1), euclid(), {4.0}), eqaff::InputError);
  eqaff::SampleOptions low;
  low.jet_order = 3;
  EXPECT_THROW(eqaff::sample_curve(circle(1), euclid(), {0.0}, low), eqaff::InputError);
}

TEST(SampleCurve, ThreadCountDoesNotChangeResults) {
  const auto grid = linspace(-1.2, 1.2, 37);
  eqaff::SampleOptions one, many;
  one.threads = 1;
  many.threads = 5;
  const auto a = eqaff::sample_curve(example_ii(4), inverse_cube_metric(1), grid, one);
  const auto b = eqaff::sample_curve(example_ii(4), inverse_cube_metric(1), grid, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_EQ(*a[i].kappa_a_intrinsic, *b[i].kappa_a_intrinsic);
    EXPECT_EQ(*a[i].kappa_a_relation, *b[i].kappa_a_relation);
  }
}

TEST(SampleCurve, HigherJetOrderAgrees) {
  eqaff::SampleOptions o6;
  o6.jet_order = 6;
  const auto a = eqaff::sample_at(example_ii(4), inverse_cube_metric(1), 0.4);
  const auto b = eqaff::sample_at(example_ii(4), inverse_cube_metric(1), 0.4, o6);
  EXPECT_NEAR(*a.kappa_a_intrinsic, *b.kappa_a_intrinsic, 1e-13);
  EXPECT_NEAR(*a.kappa_r_double_prime, *b.kappa_r_double_prime, 1e-13);
}

TEST(CurvatureProperty, RelationHoldsOnRandomScenarios) {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int m = 0; m < 60; ++m) {
    const auto s = eqaff::testing::random_scenario(rng, m);
    const auto samples = eqaff::sample_curve(s.curve(), s.metric(), s.grid_points());
    for (const auto& c : samples) {
      if (c.classification != Classification::nondegenerate || !c.relation_residual) continue;
      const double ka = *c.kappa_a_intrinsic;
      EXPECT_LT(*c.relation_residual, 1e-7 * std::max(1.0, std::fabs(ka))) << s.to_json().dump() << " t=" << c.t;
      EXPECT_LT(*c.ode_residual_norm, 1e-8) << s.to_json().dump() << " t=" << c.t;
      EXPECT_LT(*c.affine_frenet_residual, 1e-7) << s.to_json().dump() << " t=" << c.t;
      ++checked;
    }
  }
  EXPECT_GT(checked, 400);
}

TEST(CurvatureProperty, ArclengthFormAgreesWithRelation) {
  std::mt19937_64 rng(62);
  for (int m = 0; m < 30; ++m) {
    const auto s = eqaff::testing::random_scenario(rng, m, 7);
    for (double t : s.grid_points()) {
      const auto cj = eqaff::curve_jets(s.curve(), s.metric(), t, 4);
      if (eqaff::classify(cj) != Classification::nondegenerate) continue;
      const Jet kr = eqaff::kappa_r(cj), nu = eqaff::speed(cj);
      const double rel = eqaff::kappa_a_via_relation(kr, nu, cj.omega());
      const double arc = eqaff::kappa_a_arclength(eqaff::to_arclength(kr, nu), cj.omega());
      EXPECT_NEAR(arc, rel, 1e-6 * std::max(1.0, std::fabs(rel)));
    }
  }
  // Curves that really are unit speed.
  for (double t : {-0.7, 0.2, 1.1}) {
    const auto hc = eqaff::curve_jets(hyperbola(), minkowski(), t, 4);
    EXPECT_NEAR(eqaff::kappa_a_arclength(eqaff::kappa_r(hc), -1),
                eqaff::kappa_a_via_relation(eqaff::kappa_r(hc), eqaff::speed(hc), -1), 1e-6);
    const auto ec = eqaff::curve_jets(example_i(1), inverse_cube_metric(1), t, 4);
    EXPECT_NEAR(eqaff::kappa_a_arclength(eqaff::kappa_r(ec), 1), eqaff::kappa_a_intrinsic(ec), 1e-6);
  }
}

TEST(CurvatureProperty, ConstantKappaRImpliesPowerLaw) {
  for (const auto& sc : eqaff::catalog()) {
    const auto samples = eqaff::sample_curve(sc.curve(), sc.metric(), sc.grid_points());
    for (const auto& c : samples) {
      if (c.classification != Classification::nondegenerate) continue;
      if (std::fabs(*c.kappa_r_prime) > 1e-10 || std::fabs(*c.kappa_r_double_prime) > 1e-10) continue;
      const double r = std::cbrt(*c.kappa_r);
      const int w = eqaff::metric_eval(sc.metric(), c.x, c.y).omega;
      EXPECT_NEAR(*c.kappa_a_intrinsic, w * r * r * r * r, 1e-9) << sc.name << " t=" << c.t;
    }
  }
}

TEST(CurvatureProperty, ProofStepIdentities) {
  std::mt19937_64 rng(63);
  for (int m = 0; m < 30; ++m) {
    const auto s = eqaff::testing::random_scenario(rng, m, 7);
    for (double t : s.grid_points()) {
      const auto cj = eqaff::curve_jets(s.curve(), s.metric(), t, 5);
      if (eqaff::classify(cj) != Classification::nondegenerate) continue;
      const int n = cj.order() - 2;
      const Jet F = eqaff::affine_speed_form(cj);
      const Jet nu = eqaff::speed(cj);
      const Jet nu_n = eqaff::truncate(nu, n);
      const Jet kr = eqaff::kappa_r(cj);
      const Jet p = eqaff::psi(cj);
      const double w = cj.omega();

      // F = nu^3 kappa_r
      const Jet f2 = nu_n * nu_n * nu_n * kr;
      for (int k = 0; k <= 2; ++k) EXPECT_NEAR(F[k], f2[k], 1e-8 * std::max(1.0, std::fabs(F[k])));
      // psi = nu^-1 kappa_r^-1/3
      const Jet p2 = 1.0 / (nu_n * eqaff::signed_cbrt(kr));
      for (int k = 0; k <= 2; ++k) EXPECT_NEAR(p[k], p2[k], 1e-8 * std::max(1.0, std::fabs(p[k])));
      // Omega(A, B) = (3 nu nu'^2 - nu^2 nu'') kappa_r + nu^2 nu' kappa_r' + omega nu^5 kappa_r^3
      const auto A = eqaff::detail::values(eqaff::cov_accel(cj));
      const auto B = eqaff::cov_accel2(cj);
      const double lhs = eqaff::volume_form(cj.se.sqrt_abs_G.value(), A, B);
      const double v0 = nu[0], v1 = nu[1], v2 = nu[2], k0 = kr[0], k1 = kr[1];
      const double rhs = (3 * v0 * v1 * v1 - v0 * v0 * v2) * k0 + v0 * v0 * v1 * k1 +
                         w * v0 * v0 * v0 * v0 * v0 * k0 * k0 * k0;
      EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(1.0, std::fabs(lhs)));
      // psi^3 Omega(alpha', A) = 1 and psi^4 Omega(alpha', B) = -3 psi'
      const auto v = eqaff::detail::values(eqaff::velocity(cj));
      const double root = cj.se.sqrt_abs_G.value();
      const double p0 = p[0];
      EXPECT_NEAR(p0 * p0 * p0 * eqaff::volume_form(root, v, A), 1.0, 1e-8);
      EXPECT_NEAR(p0 * p0 * p0 * p0 * eqaff::volume_form(root, v, B), -3.0 * p[1], 1e-8 * std::max(1.0, std::fabs(p[1])));
    }
  }
}
