#pragma once

#include <complex>
#include <span>
#include <vector>

#include "voronoi3/bessel.hpp"
#include "voronoi3/gamma.hpp"
#include "voronoi3/hecke.hpp"
#include "voronoi3/quadrature.hpp"

namespace voronoi3 {

/// Parameters of one vertical-segment integral
///   (1/2 pi i) int_{-delta-iT}^{-delta+iT} Gamma((1-ns)/2) / Gamma((ns+1)/2 + nu - n/2)
///                                         (s + Lambda)^{-k} y^s ds.
struct LineIntegralSpec {
    int n = 3;
    int nu = 0;
    int k_order = 1;
    double delta = 0.01;
    double lambda = 11.0;
    double T = 10.0;
    double y = 1.0;

    /// y < (nT/2)^n, delta in (0, 0.1], Lambda > 1, T and y positive.
    void validate() const;
    /// Additionally Lambda > max(1, |alpha|, |beta|, |gamma|).
    void validate(const SpectralParams& spectral) const;
};

/// Integrand in t along s = -delta + i t, including the 1/(2 pi) from ds = i dt.
std::complex<double> omega_integrand(const LineIntegralSpec& spec, double t);

struct OmegaResult {
    std::complex<double> value;
    double error_estimate = 0;
    double abs_integral = 0;  ///< int |integrand| dt, an upper bound for |value|
    std::size_t panels = 0;
};

OmegaResult omega_integral(const LineIntegralSpec& spec, const QuadratureConfig& q = {});

/// (n/2)^{k-1} y^{1/2 + (1 - nu - k)/n} J_{nu+k-n/2}(2 y^{1/n}).
double bessel_main_term(const LineIntegralSpec& spec);

/// T^{n/2-nu-k+n delta} + T^{n/2-nu-k} / log(n^n T^n / (2^n y)): the shape of
/// the approximation error, to be multiplied by a calibrated constant.
double omega_error_scale(const LineIntegralSpec& spec);

/// 2 / (pi M): bound on |int g e(f)| when f'/g >= M (or <= -M) and g/f' is monotone.
double fdt_bound(double m);

struct PerronResult {
    std::complex<double> integral;
    std::complex<double> partial_sum;
    double error = 0;   ///< |integral - partial_sum|
    double budget = 0;  ///< (x^s/T) sum |c(n)| n^-s + (1 + x log x / T) max_{3x/4<=n<=5x/4} |c(n)|
    double quadrature_error = 0;
    bool ok = false;
};

/// Truncated Perron integral of the Dirichlet polynomial sum_n c(n) n^-s
/// (coeffs[0] is c(1)) against sum_{n <= x} c(n).
PerronResult perron_check(std::span<const std::complex<double>> coeffs, double sigma, double x, double T,
                          const QuadratureConfig& q = {});

}  // namespace voronoi3
