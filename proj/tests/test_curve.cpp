#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eqaff/curve.hpp"
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

void expect_jet(const Jet& j, std::initializer_list<double> want, double tol) {
  ASSERT_EQ(j.order() + 1, static_cast<int>(want.size()));
  int k = 0;
  for (double w : want) EXPECT_NEAR(j[k++], w, tol) << "coefficient " << k - 1;
}

}  // namespace

TEST(CurveJets, Examples) {
  const auto a = eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), 0.0, 4);
  expect_jet(a.x, {4, 0, -4, 0, 4}, 1e-15);
  expect_jet(a.y, {0, 4, 0, -4, 0}, 1e-15);

  const auto b = eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 2.5, 4);
  expect_jet(b.x, {1, 0, 0, 0, 0}, 0.0);
  expect_jet(b.y, {2.5, 1, 0, 0, 0}, 0.0);

  const auto c = eqaff::curve_jets(CurveSpec::parse("t", "0", -5, 5), euclid(), 3.0, 4);
  expect_jet(c.x, {3, 1, 0, 0, 0}, 0.0);
  expect_jet(c.y, {0, 0, 0, 0, 0}, 0.0);
}

TEST(CurveJets, Errors) {
  EXPECT_THROW(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 10.0, 4), eqaff::DomainError);
  EXPECT_THROW(eqaff::curve_jets(example_i(0), inverse_cube_metric(1), 0.0, 4), eqaff::ComputationError);
  EXPECT_THROW(eqaff::curve_jets(CurveSpec::parse("t", "t", -1, 1), MetricSpec::parse("x", "0", "1"), 0.0, 4),
               eqaff::DegenerateMetric);
}

TEST(Speed, Examples) {
  const Jet n1 = eqaff::speed(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.7, 4));
  expect_jet(n1, {1, 0, 0, 0}, 1e-15);

  const Jet n2 = eqaff::speed(eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), 0.0, 4));
  EXPECT_NEAR(n2[0], 0.5, 1e-15);
  EXPECT_NEAR(n2[1], 0.0, 1e-15);

  const CurveSpec hyp = CurveSpec::parse("cosh(t)", "sinh(t)", -5, 5);
  for (double t : {-2.0, 0.0, 0.4, 3.0}) {
    EXPECT_NEAR(eqaff::speed(eqaff::curve_jets(hyp, minkowski(), t, 4)).value(), 1.0, 1e-12);
  }
}

TEST(Speed, LightlikeCurveIsSingular) {
  const auto cj = eqaff::curve_jets(CurveSpec::parse("t", "t", -1, 1), minkowski(), 0.2, 4);
  EXPECT_TRUE(eqaff::is_singular(cj));
  EXPECT_THROW(eqaff::speed(cj), eqaff::SingularCurve);
  EXPECT_EQ(eqaff::classify(cj), Classification::singular);
}

TEST(CovAccel, Examples) {
  const auto A1 = eqaff::detail::values(eqaff::cov_accel(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.3, 4)));
  EXPECT_NEAR(A1[0], 1.5, 1e-14);
  EXPECT_NEAR(A1[1], 0.0, 1e-14);

  const auto A3 = eqaff::detail::values(eqaff::cov_accel(eqaff::curve_jets(example_iii(4), inverse_cube_metric(-1), 0.0, 4)));
  EXPECT_NEAR(A3[0], -2.0, 1e-14);
  EXPECT_NEAR(A3[1], 0.0, 1e-14);

  const auto cj = eqaff::curve_jets(CurveSpec::parse("t", "0", -5, 5), euclid(), 1.0, 4);
  const auto A = eqaff::cov_accel(cj);
  EXPECT_EQ(A[0].order(), 2);
  EXPECT_EQ(A[0].value(), 0.0);
  EXPECT_EQ(A[1].value(), 0.0);
  const auto B = eqaff::cov_accel2(cj);
  EXPECT_EQ(B[0], 0.0);
  EXPECT_EQ(B[1], 0.0);
}

TEST(CovAccel, ExampleIIIMatchesClosedForm) {
  // A^1 = -(lambda/2)(cosh t + 3 sinh t tanh t)
  for (double t : {-1.0, 0.5, 1.7}) {
    const auto A = eqaff::detail::values(eqaff::cov_accel(eqaff::curve_jets(example_iii(4), inverse_cube_metric(-1), t, 4)));
    EXPECT_NEAR(A[0], -2.0 * (std::cosh(t) + 3 * std::sinh(t) * std::tanh(t)), 1e-12 * std::cosh(t) * 10);
  }
}

TEST(CovAccel2, Parabola) {
  for (double t : {-1.0, 0.0, 2.0}) {
    const auto cj = eqaff::curve_jets(CurveSpec::parse("t", "t^2/2", -5, 5), euclid(), t, 4);
    const auto A = eqaff::detail::values(eqaff::cov_accel(cj));
    const auto B = eqaff::cov_accel2(cj);
    EXPECT_NEAR(A[0], 0.0, 1e-15);
    EXPECT_NEAR(A[1], 1.0, 1e-15);
    EXPECT_NEAR(B[0], 0.0, 1e-15);
    EXPECT_NEAR(B[1], 0.0, 1e-15);
  }
}

TEST(CovAccel2, ExampleIIMatchesDifferencesOfA) {
  const double t = 0.0, h = 1e-4;
  const auto cj = eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), t, 4);
  const auto B = eqaff::cov_accel2(cj);
  const auto Ap = eqaff::detail::values(eqaff::cov_accel(eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), t + h, 4)));
  const auto Am = eqaff::detail::values(eqaff::cov_accel(eqaff::curve_jets(example_ii(4), inverse_cube_metric(1), t - h, 4)));
  const auto A = eqaff::detail::values(eqaff::cov_accel(cj));
  const auto v = eqaff::detail::values(eqaff::velocity(cj));
  for (int k = 0; k < 2; ++k) {
    double fd = (Ap[k] - Am[k]) / (2 * h);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) fd += cj.christoffels.gamma[k][i][j].value() * v[i] * A[j];
    }
    EXPECT_LT(std::fabs(B[k] - fd) / std::max(1.0, std::fabs(fd)), 1e-6) << "k=" << k;
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(eqaff::classify(eqaff::curve_jets(CurveSpec::parse("t", "0", -5, 5), euclid(), 0.5, 4)),
            Classification::geodesic);
  EXPECT_EQ(eqaff::classify(eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.5, 4)),
            Classification::nondegenerate);
  EXPECT_EQ(eqaff::classify(eqaff::curve_jets(example_i(2), inverse_cube_metric(-1), 0.5, 4)),
            Classification::nondegenerate);
}

TEST(Classify, GeodesicAccelerationIsTangential) {
  // Horizontal lines are geodesics of x^-3 (dx^2 + omega dy^2); A = (nu'/nu) alpha'.
  for (int omega : {1, -1}) {
    const auto cj = eqaff::curve_jets(CurveSpec::parse("t", "0.5", 0.1, 10), inverse_cube_metric(omega), 1.3, 4);
    EXPECT_EQ(eqaff::classify(cj), Classification::geodesic);
    const Jet nu = eqaff::speed(cj);
    const auto A = eqaff::detail::values(eqaff::cov_accel(cj));
    const auto v = eqaff::detail::values(eqaff::velocity(cj));
    EXPECT_NEAR(A[0], nu[1] / nu[0] * v[0], 1e-13);
    EXPECT_NEAR(A[1], nu[1] / nu[0] * v[1], 1e-13);
    EXPECT_EQ(eqaff::affine_speed_form(cj).value(), 0.0);
    EXPECT_THROW(eqaff::frames(cj), eqaff::DegenerateCurve);
  }
}

TEST(Frames, EuclideanCircle) {
  const auto cj = eqaff::curve_jets(CurveSpec::parse("2*cos(t)", "2*sin(t)", -3.2, 3.2), euclid(), 0.0, 4);
  const auto fs = eqaff::frames(cj);
  EXPECT_NEAR(fs.T[0], 0.0, 1e-15);
  EXPECT_NEAR(fs.T[1], 1.0, 1e-15);
  EXPECT_NEAR(fs.N[0], -1.0, 1e-15);
  EXPECT_NEAR(fs.N[1], 0.0, 1e-15);
  EXPECT_EQ(fs.epsilon, 1);
}

TEST(Frames, ExampleI) {
  const auto cj = eqaff::curve_jets(example_i(1), inverse_cube_metric(1), 0.0, 4);
  const auto fs = eqaff::frames(cj);
  const auto& se = cj.se;
  const auto g = eqaff::detail::values(se.g);
  EXPECT_NEAR(fs.T[0], 0.0, 1e-15);
  EXPECT_NEAR(fs.T[1], 1.0, 1e-15);
  EXPECT_NEAR(fs.N[0], -1.0, 1e-15);
  EXPECT_NEAR(eqaff::metric_dot(g, fs.N, fs.N), 1.0, 1e-12);
  EXPECT_NEAR(eqaff::volume_form(se.sqrt_abs_G.value(), fs.T, fs.N), 1.0, 1e-12);
}

TEST(CurveProperty, FrameInvariantsAndFrenetResidual) {
  std::mt19937_64 rng(51);
  int nondegenerate = 0;
  for (int m = 0; m < 60; ++m) {
    const auto s = eqaff::testing::random_scenario(rng, m, 9);
    const auto curve = s.curve();
    const auto metric = s.metric();
    for (double t : s.grid_points()) {
      const auto cj = eqaff::curve_jets(curve, metric, t, 5);
      if (eqaff::classify(cj) != Classification::nondegenerate) continue;
      const auto fs = eqaff::frames(cj);
      const auto g = eqaff::detail::values(cj.se.g);
      const double root = cj.se.sqrt_abs_G.value();
      const int w = cj.omega();
      EXPECT_NEAR(eqaff::metric_dot(g, fs.T, fs.T), fs.epsilon, 1e-10);
      EXPECT_NEAR(eqaff::metric_dot(g, fs.N, fs.N), w * fs.epsilon, 1e-10);
      EXPECT_NEAR(eqaff::metric_dot(g, fs.T, fs.N), 0.0, 1e-10);
      EXPECT_NEAR(eqaff::volume_form(root, fs.T, fs.N), 1.0, 1e-10);
      EXPECT_NEAR(eqaff::volume_form(root, fs.e1, fs.e2), 1.0, 1e-10);

      const Jet F = eqaff::affine_speed_form(cj);
      const Jet nu = eqaff::speed(cj);
      const double kr = F.value() / (nu.value() * nu.value() * nu.value());
      EXPECT_LT(eqaff::frenet_residual(cj, kr), 1e-8);
      ++nondegenerate;
    }
  }
  EXPECT_GT(nondegenerate, 400);
}
