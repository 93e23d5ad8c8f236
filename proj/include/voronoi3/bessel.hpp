#pragma once

namespace voronoi3 {

/// J_order(x) for x > 0 and integer or half-integer order (either sign).
/// Half-integer orders use the closed trigonometric forms (spherical Bessel
/// recurrences, or the power series when x is below the order); integer
/// orders defer to std::cyl_bessel_j. Throws UnsupportedOrder otherwise.
double bessel_j(double order, double x);

/// Leading asymptotic term sqrt(2/(pi x)) cos(x - pi order/2 - pi/4).
double bessel_j_asymptotic(double order, double x);

}  // namespace voronoi3
