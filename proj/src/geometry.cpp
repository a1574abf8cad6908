#include "ellpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ellpot {

Ellipsoid::Ellipsoid(std::vector<double> semi_axes) : axes_(std::move(semi_axes)) {
  if (axes_.size() < 3)
    throw Error(ErrorCode::DimensionTooSmall,
                "need at least 3 semi-axes, got " + std::to_string(axes_.size()));
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (!std::isfinite(axes_[i]) || axes_[i] <= 0)
      throw Error(ErrorCode::NonPositiveAxis,
                  "semi-axis " + std::to_string(i + 1) + " must be finite and positive");
  }
}

Ellipsoid Ellipsoid::scaled(double factor) const {
  if (!std::isfinite(factor) || factor <= 0)
    throw Error(ErrorCode::NonPositiveAxis, "scale factor must be finite and positive");
  std::vector<double> axes(axes_);
  for (double& a : axes) a *= factor;
  return Ellipsoid(std::move(axes));
}

Ellipsoid make_ellipsoid(std::vector<double> semi_axes) { return Ellipsoid(std::move(semi_axes)); }

const char* to_string(PointKind kind) noexcept {
  switch (kind) {
    case PointKind::Interior: return "interior";
    case PointKind::Boundary: return "boundary";
    case PointKind::Exterior: return "exterior";
  }
  return "unknown";
}

void check_dimension(const Ellipsoid& e, std::span<const double> x) {
  if (x.size() != e.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "point has " + std::to_string(x.size()) + " coordinates, ellipsoid has " +
                    std::to_string(e.dimension()) + " axes");
}

double level_value(const Ellipsoid& e, std::span<const double> x, double t) {
  check_dimension(e, x);
  if (!(t >= 0)) throw Error(ErrorCode::NegativeParameter, "confocal parameter must be >= 0");
  double sum = 0;
  const auto axes = e.semi_axes();
  for (std::size_t i = 0; i < axes.size(); ++i) sum += x[i] * x[i] / (axes[i] * axes[i] + t);
  return sum;
}

double gamma(const Ellipsoid& e, double t) {
  if (!(t >= 0)) throw Error(ErrorCode::NegativeParameter, "confocal parameter must be >= 0");
  double g = 1;
  for (double a : e.semi_axes()) g *= a / std::sqrt(a * a + t);
  return g;
}

double solve_tau(const Ellipsoid& e, std::span<const double> x) {
  check_dimension(e, x);
  const auto axes = e.semi_axes();
  const double level0 = level_value(e, x, 0);
  if (!(level0 > 1)) throw Error(ErrorCode::NotExterior, "point is not outside the ellipsoid");

  double r2 = 0;
  for (double xi : x) r2 += xi * xi;
  const auto [amin, amax] = std::minmax_element(axes.begin(), axes.end());

  // |x|^2/(amax^2+t) <= f(t)+1 <= |x|^2/(amin^2+t) pins the root.
  double lo = std::max(0.0, r2 - *amax * *amax);
  double hi = r2 - *amin * *amin;

  auto residual = [&](double t, double& slope) {
    double f = -1, df = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const double d = axes[i] * axes[i] + t;
      const double q = x[i] * x[i] / d;
      f += q;
      df -= q / d;
    }
    slope = df;
    return f;
  };

  // f is convex and decreasing, so Newton from the left end climbs monotonically.
  double t = lo;
  for (int iter = 0; iter < 200; ++iter) {
    double slope = 0;
    const double f = residual(t, slope);
    if (f == 0) return t;
    if (f > 0)
      lo = t;
    else
      hi = t;
    double next = slope < 0 ? t - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 4 * std::numeric_limits<double>::epsilon() * t || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) {
      if (std::abs(residual(t, slope)) <= kTauTolerance) return t;
      break;
    }
  }
  double slope = 0;
  if (std::abs(residual(t, slope)) <= kTauTolerance && t > 0) return t;
  throw Error(ErrorCode::NoConvergence, "confocal parameter iteration did not converge");
}

PointClassification classify_point(const Ellipsoid& e, std::span<const double> x,
                                   double boundary_tol) {
  if (!(boundary_tol > 0)) throw Error(ErrorCode::InvalidConfig, "boundary tolerance must be > 0");
  const double level0 = level_value(e, x, 0);
  if (level0 < 1 - boundary_tol) return {PointKind::Interior, 0.0};
  if (std::abs(level0 - 1) <= boundary_tol) return {PointKind::Boundary, 0.0};
  return {PointKind::Exterior, solve_tau(e, x)};
}

double volume(const Ellipsoid& e) {
  const double n = static_cast<double>(e.dimension());
  double v = std::pow(std::numbers::pi, n / 2) / std::tgamma(n / 2 + 1);
  for (double a : e.semi_axes()) v *= a;
  return v;
}

}  // namespace ellpot
