#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ellpot/geometry.hpp"
#include "ellpot/quadrature.hpp"

namespace ellpot {

/// c_N = 1 / ((N - 2) * omega_N), omega_N the area of the unit sphere in R^N.
double kernel_constant(int dimension);

/// Unit-density Newtonian potential c_N * int_Omega |x - y|^{2-N} dy at one point.
struct PotentialValue {
  double value = 0.0;
  PointClassification point_class;
  IntegralResult quadrature;
};

struct FieldValue {
  std::vector<double> gradient;
  PointClassification point_class;
  /// Aggregated over the per-axis integrals: summed error and evaluation
  /// counts, converged only if every axis converged.
  IntegralResult quadrature;
};

/// int_lower^inf gamma_t / (a_i^2 + t) dt, shared by the field and the
/// demagnetizing factors.
IntegralResult axis_integral(const Ellipsoid& e, std::size_t axis, double lower,
                             const QuadratureConfig& cfg = {});

/// (1/4) int_{tau(x)}^inf gamma_t (1 - sum_i x_i^2 / (a_i^2 + t)) dt.
PotentialValue potential_at(const Ellipsoid& e, std::span<const double> x,
                            const QuadratureConfig& cfg = {},
                            double boundary_tol = kDefaultBoundaryTol);

/// Gradient of potential_at, component i = -(x_i / 2) int_{tau(x)}^inf gamma_t / (a_i^2 + t) dt.
/// The boundary term from tau(x) drops out since the potential integrand vanishes there.
FieldValue field_at(const Ellipsoid& e, std::span<const double> x,
                    const QuadratureConfig& cfg = {},
                    double boundary_tol = kDefaultBoundaryTol);

/// Potential of the hollow body scale*Omega \ Omega (unit density).
IntegralResult hollow_shell_potential(const Ellipsoid& e, double scale, std::span<const double> x,
                                      const QuadratureConfig& cfg = {});

std::vector<double> hollow_shell_field(const Ellipsoid& e, double scale,
                                       std::span<const double> x,
                                       const QuadratureConfig& cfg = {});

struct Density {
  double value;
};
struct TotalMass {
  double value;
};

struct GravityConfig {
  double G = 1.0;
  std::variant<Density, TotalMass> source = Density{1.0};

  void validate() const;
  /// Uniform density of `e`, converting a total mass through the volume.
  double density(const Ellipsoid& e) const;
};

/// u(x) = 4 pi G rho N[1](x) for a three-dimensional body.
IntegralResult gravitational_potential(const Ellipsoid& e, const GravityConfig& g,
                                       std::span<const double> x,
                                       const QuadratureConfig& cfg = {});

}  // namespace ellpot
