#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ellpot/geometry.hpp"

namespace ellpot {
namespace {

using P = std::vector<double>;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ellpot::Error";
  return ErrorCode::Usage;
}

TEST(Ellipsoid, ConstructsSphereAndSpheroid) {
  const Ellipsoid sphere = make_ellipsoid({1, 1, 1});
  EXPECT_EQ(sphere.dimension(), 3u);
  const Ellipsoid prolate = make_ellipsoid({2, 1, 1});
  EXPECT_EQ(prolate.axis(0), 2.0);
}

TEST(Ellipsoid, RejectsBadAxes) {
  EXPECT_EQ(code_of([] { make_ellipsoid({1, -1, 1}); }), ErrorCode::NonPositiveAxis);
  EXPECT_EQ(code_of([] { make_ellipsoid({1, 0, 1}); }), ErrorCode::NonPositiveAxis);
  EXPECT_EQ(code_of([] { make_ellipsoid({1, NAN, 1}); }), ErrorCode::NonPositiveAxis);
  EXPECT_EQ(code_of([] { make_ellipsoid({1, INFINITY, 1}); }), ErrorCode::NonPositiveAxis);
  EXPECT_EQ(code_of([] { make_ellipsoid({1, 1}); }), ErrorCode::DimensionTooSmall);
}

TEST(LevelValue, Examples) {
  const Ellipsoid sphere({1, 1, 1});
  EXPECT_DOUBLE_EQ(level_value(sphere, P{2, 0, 0}, 0), 4.0);
  EXPECT_DOUBLE_EQ(level_value(sphere, P{2, 0, 0}, 3), 1.0);
  EXPECT_DOUBLE_EQ(level_value(Ellipsoid({2, 1, 1}), P{3, 0, 0}, 5), 1.0);
  EXPECT_EQ(code_of([&] { level_value(sphere, P{1, 0, 0}, -1); }), ErrorCode::NegativeParameter);
  EXPECT_EQ(code_of([&] { level_value(sphere, P{1, 0}, 0); }), ErrorCode::DimensionMismatch);
}

TEST(Gamma, Examples) {
  EXPECT_EQ(gamma(Ellipsoid({3, 2, 1}), 0), 1.0);
  EXPECT_DOUBLE_EQ(gamma(Ellipsoid({1, 1, 1}), 3), 1.0 / 8);
  EXPECT_NEAR(gamma(Ellipsoid({2, 1, 1}), 5), 1.0 / 9, 1e-16);
  EXPECT_EQ(code_of([] { gamma(Ellipsoid({1, 1, 1}), -0.5); }), ErrorCode::NegativeParameter);
}

TEST(Gamma, DecreasingWithPowerLawTail) {
  const Ellipsoid e({3, 2, 1});
  double prev = 1;
  for (double t = 0.1; t < 1e6; t *= 3) {
    const double g = gamma(e, t);
    EXPECT_LT(g, prev);
    EXPECT_GT(g, 0);
    prev = g;
  }
  const double t = 1e12;
  EXPECT_NEAR(gamma(e, t) * std::pow(t, 1.5) / 6.0, 1.0, 1e-10);
}

TEST(SolveTau, Examples) {
  EXPECT_NEAR(solve_tau(Ellipsoid({1, 1, 1}), P{2, 0, 0}), 3.0, 1e-13);
  EXPECT_NEAR(solve_tau(Ellipsoid({2, 1, 1}), P{3, 0, 0}), 5.0, 1e-13);
  EXPECT_NEAR(solve_tau(Ellipsoid({2, 1, 1}), P{0, 0, 4}), 15.0, 1e-12);
}

TEST(SolveTau, RejectsNonExterior) {
  const Ellipsoid e({2, 1, 1});
  EXPECT_EQ(code_of([&] { solve_tau(e, P{0.5, 0, 0}); }), ErrorCode::NotExterior);
  EXPECT_EQ(code_of([&] { solve_tau(e, P{2, 0, 0}); }), ErrorCode::NotExterior);
}

TEST(SolveTau, ResidualScalingAndPermutation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> axis(0.1, 10), coord(-30, 30), lam(0.1, 10);
  int checked = 0;
  while (checked < 200) {
    const P axes{axis(rng), axis(rng), axis(rng), axis(rng)};
    const P x{coord(rng), coord(rng), coord(rng), coord(rng)};
    const Ellipsoid e(axes);
    if (level_value(e, x, 0) <= 1.0001) continue;
    ++checked;
    const double tau = solve_tau(e, x);
    double r2 = 0;
    for (double c : x) r2 += c * c;
    EXPECT_GT(tau, 0);
    EXPECT_LT(tau, r2);
    EXPECT_LE(std::abs(level_value(e, x, tau) - 1), kTauTolerance);

    const double l = lam(rng);
    P xs(x);
    for (double& c : xs) c *= l;
    EXPECT_NEAR(solve_tau(e.scaled(l), xs) / (l * l * tau), 1.0, 1e-10);

    // Reverse both the axes and the coordinates.
    P ra(axes.rbegin(), axes.rend()), rx(x.rbegin(), x.rend());
    EXPECT_NEAR(solve_tau(Ellipsoid(ra), rx), tau, 1e-12 * tau);
    EXPECT_NEAR(gamma(Ellipsoid(ra), tau), gamma(e, tau), 1e-15);
  }
}

TEST(SolveTau, VanishesTowardsBoundary) {
  const Ellipsoid e({3, 2, 1});
  for (std::size_t axis = 0; axis < 3; ++axis) {
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
      P x(3, 0.0);
      x[axis] = e.axis(axis) * (1 + eps);
      const double tau = solve_tau(e, x);
      // Single-axis root: a^2 (1 + eps)^2 - a^2.
      const double a2 = e.axis(axis) * e.axis(axis);
      EXPECT_NEAR(tau, a2 * eps * (2 + eps), 1e-12 * a2);
    }
  }
}

TEST(SolveTau, FarAwayPoint) {
  const Ellipsoid e({3, 2, 1});
  const P x{1e6, -2e6, 5e5};
  const double tau = solve_tau(e, x);
  EXPECT_LE(std::abs(level_value(e, x, tau) - 1), kTauTolerance);
}

TEST(ClassifyPoint, Examples) {
  const Ellipsoid sphere({1, 1, 1});
  auto c = classify_point(sphere, P{0, 0, 0});
  EXPECT_EQ(c.kind, PointKind::Interior);
  EXPECT_EQ(c.tau, 0.0);
  c = classify_point(sphere, P{2, 0, 0});
  EXPECT_EQ(c.kind, PointKind::Exterior);
  EXPECT_NEAR(c.tau, 3.0, 1e-13);
  c = classify_point(sphere, P{1, 0, 0});
  EXPECT_EQ(c.kind, PointKind::Boundary);
  EXPECT_EQ(c.tau, 0.0);
  c = classify_point(sphere, P{1 + 1e-12, 0, 0});
  EXPECT_EQ(c.kind, PointKind::Boundary);
  c = classify_point(sphere, P{1 + 1e-12, 0, 0}, 1e-15);
  EXPECT_EQ(c.kind, PointKind::Exterior);
  EXPECT_GT(c.tau, 0);
  EXPECT_EQ(code_of([&] { classify_point(sphere, P{0, 0, 0}, 0); }), ErrorCode::InvalidConfig);
}

TEST(Volume, MatchesKnownBalls) {
  EXPECT_NEAR(volume(Ellipsoid({1, 1, 1})), 4 * M_PI / 3, 1e-14);
  EXPECT_NEAR(volume(Ellipsoid({3, 2, 1})), 8 * M_PI, 1e-13);
  EXPECT_NEAR(volume(Ellipsoid({1, 1, 1, 1})), M_PI * M_PI / 2, 1e-14);
}

}  // namespace
}  // namespace ellpot
