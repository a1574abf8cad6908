#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ellpot/error.hpp"

namespace ellpot {

using Point = std::vector<double>;

inline constexpr double kDefaultBoundaryTol = 1e-9;
inline constexpr double kTauTolerance = 1e-12;

/// Axis-aligned ellipsoid centred at the origin, sum_i x_i^2 / a_i^2 <= 1.
///
/// The confocal family Omega_t has squared semi-axes a_i^2 + t, so every
/// member shares the foci of Omega_0 = Omega.
class Ellipsoid {
 public:
  /// Throws NonPositiveAxis for a non-finite or non-positive entry and
  /// DimensionTooSmall for fewer than three axes.
  explicit Ellipsoid(std::vector<double> semi_axes);

  std::size_t dimension() const noexcept { return axes_.size(); }
  std::span<const double> semi_axes() const noexcept { return axes_; }
  double axis(std::size_t i) const { return axes_.at(i); }

  /// Same shape, every semi-axis multiplied by `factor` > 0.
  Ellipsoid scaled(double factor) const;

  friend bool operator==(const Ellipsoid&, const Ellipsoid&) = default;

 private:
  std::vector<double> axes_;
};

Ellipsoid make_ellipsoid(std::vector<double> semi_axes);

enum class PointKind { Interior, Boundary, Exterior };

const char* to_string(PointKind kind) noexcept;

struct PointClassification {
  PointKind kind = PointKind::Interior;
  /// Confocal parameter; zero unless kind == Exterior.
  double tau = 0.0;
};

/// |phi_t(x)|^2 = sum_i x_i^2 / (a_i^2 + t).
double level_value(const Ellipsoid& e, std::span<const double> x, double t);

/// gamma_t = prod_i a_i / sqrt(a_i^2 + t); equals 1 at t = 0.
double gamma(const Ellipsoid& e, double t);

/// Unique tau > 0 with level_value(e, x, tau) == 1. Requires an exterior point.
double solve_tau(const Ellipsoid& e, std::span<const double> x);

PointClassification classify_point(const Ellipsoid& e, std::span<const double> x,
                                   double boundary_tol = kDefaultBoundaryTol);

/// Volume of the ellipsoid in R^N: pi^{N/2} / Gamma(N/2 + 1) * prod a_i.
double volume(const Ellipsoid& e);

void check_dimension(const Ellipsoid& e, std::span<const double> x);

}  // namespace ellpot
