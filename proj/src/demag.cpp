#include "ellpot/demag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ellpot/elliptic.hpp"
#include "ellpot/potential.hpp"

namespace ellpot {

namespace {

void require_three(const Ellipsoid& e) {
  if (e.dimension() != 3)
    throw Error(ErrorCode::DimensionNotThree, "demagnetizing factors are defined for N = 3");
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kDegenerateAxisTol * std::max(a, b);
}

// Small-eccentricity expansions replace the closed forms below this threshold,
// where the bracketed differences cancel.
constexpr double kSeriesThreshold = 0.1;

double series(double x2, double sign) {
  double sum = 0, term = 1;
  for (int k = 0; k < 40; ++k) {
    const double next = term / (2 * k + 3);
    sum += next;
    if (std::abs(next) < 1e-18 * std::abs(sum)) break;
    term *= sign * x2;
  }
  return sum;
}

}  // namespace

Magnetization::Magnetization(std::array<double, 3> m) : m_(m) {
  for (double c : m_)
    if (!std::isfinite(c)) throw Error(ErrorCode::InvalidConfig, "magnetization must be finite");
}

DemagIntegral demag_factors_integral(const Ellipsoid& e, const QuadratureConfig& cfg) {
  require_three(e);
  DemagIntegral out;
  for (std::size_t i = 0; i < 3; ++i) {
    const IntegralResult r = axis_integral(e, i, 0.0, cfg);
    out.tensor.factors[i] = 0.5 * r.value;
    out.quadrature.error_estimate += 0.5 * r.error_estimate;
    out.quadrature.evaluations += r.evaluations;
    out.quadrature.subdivisions += r.subdivisions;
    out.quadrature.converged = out.quadrature.converged && r.converged;
  }
  out.quadrature.value = out.tensor.trace();
  return out;
}

DemagTensor demag_closed_triaxial(const Ellipsoid& e) {
  require_three(e);
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return e.axis(l) > e.axis(r); });
  const double a1 = e.axis(order[0]), a2 = e.axis(order[1]), a3 = e.axis(order[2]);
  if (nearly_equal(a1, a2) || nearly_equal(a2, a3))
    throw Error(ErrorCode::DegenerateAxes, "triaxial form needs three distinct axes");

  const double d12 = (a1 - a2) * (a1 + a2);
  const double d13 = (a1 - a3) * (a1 + a3);
  const double d23 = (a2 - a3) * (a2 + a3);

  // The middle factor uses E with parameter d13/d12 > 1; p sin^2 y = d13/a1^2 < 1
  // keeps the integrand real.
  const double y2 = std::atan2(std::sqrt(d12), a2);
  const double p2 = -a3 / d23 * (a3 - a1 * a2 / std::sqrt(d12) * elliptic_e_incomplete(y2, d13 / d12));

  const double y3 = std::atan2(std::sqrt(d13), a3);
  const double p3 = a2 / d23 * (a2 - a1 * a3 / std::sqrt(d13) * elliptic_e_incomplete(y3, d12 / d13));

  DemagTensor sorted{{1 - p2 - p3, p2, p3}};
  DemagTensor out;
  for (std::size_t k = 0; k < 3; ++k) out.factors[order[k]] = sorted.factors[k];
  return out;
}

DemagTensor demag_prolate(double a1, double a3) {
  if (!(a3 > 0) || !(a1 > a3) || !std::isfinite(a1))
    throw Error(ErrorCode::NotProlate, "prolate spheroid needs a1 > a3 > 0");
  const double s = std::sqrt((a1 - a3) * (a1 + a3));
  const double ecc = s / a1;
  double p1;
  if (ecc < kSeriesThreshold) {
    // (1 - e^2)/e^3 (artanh e - e) = (1 - e^2) sum_k e^{2k} / (2k + 3)
    p1 = (a3 / a1) * (a3 / a1) * series(ecc * ecc, 1.0);
  } else {
    // arccoth(a1 / s) = artanh(s / a1), with a1 - s = a3^2 / (a1 + s).
    const double artanh = 0.5 * std::log((a1 + s) * (a1 + s) / (a3 * a3));
    p1 = a3 * a3 / (s * s * s) * (a1 * artanh - s);
  }
  const double p2 = 0.5 * (1 - p1);
  return {{p1, p2, p2}};
}

DemagTensor demag_oblate(double a1, double a3) {
  if (!(a3 > 0) || !(a1 > a3) || !std::isfinite(a1))
    throw Error(ErrorCode::NotOblate, "oblate spheroid needs a1 > a3 > 0");
  const double s = std::sqrt((a1 - a3) * (a1 + a3));
  const double q = s / a3;
  double p3;
  if (q < kSeriesThreshold) {
    // a1^2 a3 / s^3 (q - atan q) = (1 + q^2) sum_k (-1)^k q^{2k} / (2k + 3)
    p3 = (1 + q * q) * series(q * q, -1.0);
  } else {
    p3 = a1 * a1 / (s * s * s) * (s - a3 * std::atan(q));
  }
  const double p1 = 0.5 * (1 - p3);
  return {{p1, p1, p3}};
}

DemagTensor demag_closed_form(const Ellipsoid& e) {
  require_three(e);
  std::array<std::size_t, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return e.axis(l) > e.axis(r); });
  const double a1 = e.axis(order[0]), a2 = e.axis(order[1]), a3 = e.axis(order[2]);
  const bool eq12 = nearly_equal(a1, a2), eq23 = nearly_equal(a2, a3);

  DemagTensor sorted;
  if ((eq12 && eq23) || nearly_equal(a1, a3)) {
    sorted.factors = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  } else if (eq12) {
    sorted = demag_oblate(0.5 * (a1 + a2), a3);
  } else if (eq23) {
    sorted = demag_prolate(a1, 0.5 * (a2 + a3));
  } else {
    return demag_closed_triaxial(e);
  }
  DemagTensor out;
  for (std::size_t k = 0; k < 3; ++k) out.factors[order[k]] = sorted.factors[k];
  return out;
}

std::array<double, 3> stray_field(const DemagTensor& p, const Magnetization& m) {
  const auto& v = m.vector();
  return {-p.factors[0] * v[0], -p.factors[1] * v[1], -p.factors[2] * v[2]};
}

double magnetostatic_potential(const Ellipsoid& e, const DemagTensor& p, const Magnetization& m,
                               std::span<const double> x) {
  require_three(e);
  if (!(level_value(e, x, 0) < 1))
    throw Error(ErrorCode::NotInterior, "magnetostatic potential formula holds inside the body only");
  const auto& v = m.vector();
  double phi = 0;
  for (std::size_t i = 0; i < 3; ++i) phi += p.factors[i] * x[i] * v[i];
  return phi;
}

}  // namespace ellpot
