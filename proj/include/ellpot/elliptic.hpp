#pragma once

#include "ellpot/quadrature.hpp"

namespace ellpot {

/// Carlson's symmetric integral R_F(x, y, z); at most one argument may be zero.
double carlson_rf(double x, double y, double z);

/// Carlson's symmetric integral R_D(x, y, z); z > 0, at most one of x, y zero.
double carlson_rd(double x, double y, double z);

/// Incomplete elliptic integral of the second kind in parameter form,
/// E(y|p) = int_0^y sqrt(1 - p sin^2 theta) dtheta, via Carlson duplication.
///
/// Any finite y is accepted for 0 <= p <= 1. A parameter p > 1 is accepted
/// only while the integrand stays real on [0, y], i.e. |y| <= pi/2 and
/// p sin^2 y <= 1; the triaxial demagnetizing factors need that branch.
/// Throws ParameterOutOfRange otherwise.
double elliptic_e_incomplete(double y, double p);

/// The same integral evaluated by adaptive quadrature of its definition.
IntegralResult elliptic_e_by_quadrature(double y, double p, const QuadratureConfig& cfg = {});

}  // namespace ellpot
