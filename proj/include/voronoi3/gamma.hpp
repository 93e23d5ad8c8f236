#pragma once

#include <complex>

namespace voronoi3 {

/// log Gamma(s) on a branch continuous in the right half plane; the
/// imaginary part is only meaningful modulo 2*pi. Lanczos (g = 7, n = 9)
/// for Re s >= 1/2, reflection otherwise. Throws PoleAt when s lies within
/// 1e-12 of a non-positive integer.
std::complex<double> log_gamma(std::complex<double> s);

/// Gamma(s) = exp(log_gamma(s)). Underflows to 0 once |Im s| exceeds ~450.
std::complex<double> complex_gamma(std::complex<double> s);

/// log sin(pi z), evaluated without forming sin(pi z) so it stays finite for
/// |Im z| far beyond the overflow threshold.
std::complex<double> log_sin_pi(std::complex<double> z);

}  // namespace voronoi3
