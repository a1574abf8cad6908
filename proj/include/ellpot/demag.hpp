#pragma once

#include <array>
#include <span>

#include "ellpot/geometry.hpp"
#include "ellpot/quadrature.hpp"

namespace ellpot {

/// Diagonal of the demagnetizing tensor, in the order of the semi-axes.
struct DemagTensor {
  std::array<double, 3> factors{};

  double trace() const { return factors[0] + factors[1] + factors[2]; }
};

struct DemagIntegral {
  DemagTensor tensor;
  IntegralResult quadrature;
};

/// Uniform magnetization vector.
class Magnetization {
 public:
  explicit Magnetization(std::array<double, 3> m);
  const std::array<double, 3>& vector() const noexcept { return m_; }

 private:
  std::array<double, 3> m_;
};

inline constexpr double kDegenerateAxisTol = 1e-8;

/// P_i = (1/2) int_0^inf gamma_t / (a_i^2 + t) dt. Reference evaluation that
/// every closed form is checked against.
DemagIntegral demag_factors_integral(const Ellipsoid& e, const QuadratureConfig& cfg = {});

/// Elliptic-integral closed form for three distinct axes, in any order.
/// Throws DegenerateAxes when two axes agree to kDegenerateAxisTol.
DemagTensor demag_closed_triaxial(const Ellipsoid& e);

/// a1 > a3 > 0, factors ordered (long, short, short).
DemagTensor demag_prolate(double a1, double a3);

/// a1 > a3 > 0, factors ordered (wide, wide, thin).
DemagTensor demag_oblate(double a1, double a3);

/// Closed form for any 3-axis ellipsoid: sphere, spheroid or triaxial,
/// with near-equal axes routed to the lower-symmetry formula.
DemagTensor demag_closed_form(const Ellipsoid& e);

/// Interior stray field h = -P m.
std::array<double, 3> stray_field(const DemagTensor& p, const Magnetization& m);

/// Interior magnetostatic potential P x . m; NotInterior outside the body.
double magnetostatic_potential(const Ellipsoid& e, const DemagTensor& p, const Magnetization& m,
                               std::span<const double> x);

}  // namespace ellpot
