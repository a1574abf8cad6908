#include "ellpot/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ellpot/error.hpp"

namespace ellpot {

namespace {

constexpr double kRfTol = 0.0008;
constexpr double kRdTol = 0.0005;

void check_parameter(double y, double p) {
  if (!std::isfinite(y) || !std::isfinite(p) || p < 0)
    throw Error(ErrorCode::ParameterOutOfRange, "E(y|p) needs finite y and p >= 0");
  if (p > 1) {
    const double s = std::sin(y);
    if (std::abs(y) > std::numbers::pi / 2 || p * s * s > 1 + 1e-14)
      throw Error(ErrorCode::ParameterOutOfRange,
                  "E(y|p) with p > 1 requires p sin^2(y) <= 1 and |y| <= pi/2");
  }
}

// E on |phi| <= pi/2.
double elliptic_e_principal(double phi, double p) {
  const double s = std::sin(phi);
  if (p == 1) return s;
  const double c = std::cos(phi);
  const double c2 = c * c;
  const double delta = std::max(0.0, 1 - p * s * s);
  if (s == 0) return 0;
  return s * carlson_rf(c2, delta, 1) - p * s * s * s / 3 * carlson_rd(c2, delta, 1);
}

}  // namespace

double carlson_rf(double x, double y, double z) {
  if (std::min({x, y, z}) < 0 || std::min({x + y, x + z, y + z}) <= 0)
    throw Error(ErrorCode::ParameterOutOfRange, "R_F needs non-negative arguments, at most one zero");
  double xt = x, yt = y, zt = z;
  double mean = 0, dx = 0, dy = 0, dz = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lambda = sx * (sy + sz) + sy * sz;
    xt = 0.25 * (xt + lambda);
    yt = 0.25 * (yt + lambda);
    zt = 0.25 * (zt + lambda);
    mean = (xt + yt + zt) / 3;
    dx = (mean - xt) / mean;
    dy = (mean - yt) / mean;
    dz = (mean - zt) / mean;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= kRfTol) break;
  }
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (1 + (e2 / 24 - 0.1 - 3 * e3 / 44) * e2 + e3 / 14) / std::sqrt(mean);
}

double carlson_rd(double x, double y, double z) {
  if (std::min(x, y) < 0 || x + y <= 0 || z <= 0)
    throw Error(ErrorCode::ParameterOutOfRange, "R_D needs x, y >= 0 (not both zero) and z > 0");
  constexpr double c1 = 3.0 / 14, c2 = 1.0 / 6, c3 = 9.0 / 22, c4 = 3.0 / 26;
  constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
  double xt = x, yt = y, zt = z;
  double sum = 0, fac = 1;
  double mean = 0, dx = 0, dy = 0, dz = 0;
  for (int iter = 0; iter < 100; ++iter) {
    const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
    const double lambda = sx * (sy + sz) + sy * sz;
    sum += fac / (sz * (zt + lambda));
    fac *= 0.25;
    xt = 0.25 * (xt + lambda);
    yt = 0.25 * (yt + lambda);
    zt = 0.25 * (zt + lambda);
    mean = 0.2 * (xt + yt + 3 * zt);
    dx = (mean - xt) / mean;
    dy = (mean - yt) / mean;
    dz = (mean - zt) / mean;
    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= kRdTol) break;
  }
  const double ea = dx * dy;
  const double eb = dz * dz;
  const double ec = ea - eb;
  const double ed = ea - 6 * eb;
  const double ee = ed + ec + ec;
  return 3 * sum + fac * (1 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                          dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea))) /
                       (mean * std::sqrt(mean));
}

double elliptic_e_incomplete(double y, double p) {
  check_parameter(y, p);
  if (p == 0) return y;
  if (std::abs(y) <= std::numbers::pi / 2) return elliptic_e_principal(y, p);
  // Quasi-periodicity: E(y + k pi) = E(y) + 2 k E(pi/2).
  const double k = std::round(y / std::numbers::pi);
  const double rest = y - k * std::numbers::pi;
  const double complete = elliptic_e_principal(std::numbers::pi / 2, p);
  return 2 * k * complete + elliptic_e_principal(rest, p);
}

IntegralResult elliptic_e_by_quadrature(double y, double p, const QuadratureConfig& cfg) {
  check_parameter(y, p);
  return integrate_interval(
      [p](double theta) {
        const double s = std::sin(theta);
        return std::sqrt(std::max(0.0, 1 - p * s * s));
      },
      0.0, y, cfg);
}

}  // namespace ellpot
