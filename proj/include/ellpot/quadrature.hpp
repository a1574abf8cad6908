#pragma once

#include <functional>

namespace ellpot {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 200;

  /// Throws InvalidConfig unless both tolerances and the subdivision cap are positive.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  /// False when max_subdivisions ran out before the tolerance was met; value
  /// and error_estimate then hold the best available approximation.
  bool converged = true;
};

using Integrand = std::function<double(double)>;

/// Adaptive 15-point Gauss-Kronrod quadrature over the finite interval [a, b].
IntegralResult integrate_interval(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg = {});

/// Integral of f over [lower, +inf). The tail is compactified with
/// t = lower + u / (1 - u) before adaptive Gauss-Kronrod bisection; the
/// integrand must decay at least like t^{-3/2}. Throws InvalidBound when
/// lower is not finite.
IntegralResult integrate_tail(const Integrand& f, double lower, const QuadratureConfig& cfg = {});

}  // namespace ellpot
