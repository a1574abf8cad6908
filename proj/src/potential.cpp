#include "ellpot/potential.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ellpot {

namespace {

IntegralResult combine(const IntegralResult& a, const IntegralResult& b, double value) {
  IntegralResult r;
  r.value = value;
  r.error_estimate = a.error_estimate + b.error_estimate;
  r.evaluations = a.evaluations + b.evaluations;
  r.subdivisions = a.subdivisions + b.subdivisions;
  r.converged = a.converged && b.converged;
  return r;
}

void check_scale(double scale) {
  if (!(scale > 1) || !std::isfinite(scale))
    throw Error(ErrorCode::ScaleNotGreaterThanOne, "shell scale must be a finite value > 1");
}

}  // namespace

double kernel_constant(int dimension) {
  if (dimension < 3)
    throw Error(ErrorCode::DimensionTooSmall, "kernel needs N >= 3, got " + std::to_string(dimension));
  const double n = dimension;
  const double sphere_area = 2 * std::pow(std::numbers::pi, n / 2) / std::tgamma(n / 2);
  return 1 / ((n - 2) * sphere_area);
}

IntegralResult axis_integral(const Ellipsoid& e, std::size_t axis, double lower,
                             const QuadratureConfig& cfg) {
  const double a2 = e.axis(axis) * e.axis(axis);
  return integrate_tail([&](double t) { return gamma(e, t) / (a2 + t); }, lower, cfg);
}

PotentialValue potential_at(const Ellipsoid& e, std::span<const double> x,
                            const QuadratureConfig& cfg, double boundary_tol) {
  PotentialValue out;
  out.point_class = classify_point(e, x, boundary_tol);
  out.quadrature = integrate_tail(
      [&](double t) { return 0.25 * gamma(e, t) * (1 - level_value(e, x, t)); },
      out.point_class.tau, cfg);
  out.value = out.quadrature.value;
  return out;
}

FieldValue field_at(const Ellipsoid& e, std::span<const double> x, const QuadratureConfig& cfg,
                    double boundary_tol) {
  FieldValue out;
  out.point_class = classify_point(e, x, boundary_tol);
  out.gradient.assign(e.dimension(), 0.0);
  for (std::size_t i = 0; i < e.dimension(); ++i) {
    if (x[i] == 0) continue;
    const IntegralResult r = axis_integral(e, i, out.point_class.tau, cfg);
    out.gradient[i] = -0.5 * x[i] * r.value;
    IntegralResult scaled = r;
    scaled.error_estimate *= 0.5 * std::abs(x[i]);
    out.quadrature = combine(out.quadrature, scaled, 0.0);
  }
  return out;
}

IntegralResult hollow_shell_potential(const Ellipsoid& e, double scale, std::span<const double> x,
                                      const QuadratureConfig& cfg) {
  check_scale(scale);
  const PotentialValue outer = potential_at(e.scaled(scale), x, cfg);
  const PotentialValue inner = potential_at(e, x, cfg);
  return combine(outer.quadrature, inner.quadrature, outer.value - inner.value);
}

std::vector<double> hollow_shell_field(const Ellipsoid& e, double scale,
                                       std::span<const double> x, const QuadratureConfig& cfg) {
  check_scale(scale);
  const FieldValue outer = field_at(e.scaled(scale), x, cfg);
  const FieldValue inner = field_at(e, x, cfg);
  std::vector<double> g(outer.gradient);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= inner.gradient[i];
  return g;
}

void GravityConfig::validate() const {
  if (!(G > 0) || !std::isfinite(G))
    throw Error(ErrorCode::InvalidConfig, "gravitational constant must be positive");
  const double s = std::visit([](auto v) { return v.value; }, source);
  if (!(s > 0) || !std::isfinite(s))
    throw Error(ErrorCode::InvalidConfig, "density or total mass must be positive");
}

double GravityConfig::density(const Ellipsoid& e) const {
  if (const auto* rho = std::get_if<Density>(&source)) return rho->value;
  return std::get<TotalMass>(source).value / volume(e);
}

IntegralResult gravitational_potential(const Ellipsoid& e, const GravityConfig& g,
                                       std::span<const double> x, const QuadratureConfig& cfg) {
  if (e.dimension() != 3)
    throw Error(ErrorCode::DimensionNotThree, "gravitational potential is defined for N = 3");
  g.validate();
  const PotentialValue n = potential_at(e, x, cfg);
  const double factor = 4 * std::numbers::pi * g.G * g.density(e);
  IntegralResult r = n.quadrature;
  r.value = factor * n.value;
  r.error_estimate *= factor;
  return r;
}

}  // namespace ellpot
