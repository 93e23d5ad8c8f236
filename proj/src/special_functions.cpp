#include "voronoi3/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "voronoi3/errors.hpp"

namespace voronoi3 {

namespace {

using cplx = std::complex<double>;

InvalidArgument spec_error(const std::string& what) {
    return InvalidArgument("special_functions", "omega_integral", what);
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(max_phase_step > 0.0 && max_phase_step <= std::numbers::pi / 2.0))
        throw InvalidArgument("special_functions", "QuadratureConfig", "max_phase_step must lie in (0, pi/2]");
    if (!(abs_tol > 0.0)) throw InvalidArgument("special_functions", "QuadratureConfig", "abs_tol must be > 0");
    if (max_panels == 0) throw InvalidArgument("special_functions", "QuadratureConfig", "max_panels must be > 0");
}

void LineIntegralSpec::validate() const {
    if (n < 1) throw spec_error("n must be >= 1");
    if (nu < 0 || k_order < 0) throw spec_error("nu and k must be non-negative");
    if (!(delta > 0.0 && delta <= 0.1)) throw spec_error("delta must lie in (0, 0.1]");
    if (!(T > 0.0) || !(y > 0.0)) throw spec_error("T and y must be positive");
    if (!(lambda > 1.0)) throw spec_error("Lambda must exceed 1");
    if (!(y < std::pow(n * T / 2.0, n))) throw spec_error("y must satisfy y < (n T / 2)^n");
}

void LineIntegralSpec::validate(const SpectralParams& spectral) const {
    validate();
    const double floor = std::max({1.0, std::abs(spectral.alpha()), std::abs(spectral.beta()),
                                   std::abs(spectral.gamma())});
    if (!(lambda > floor)) throw spec_error("Lambda must exceed max(1, |alpha|, |beta|, |gamma|)");
}

cplx omega_integrand(const LineIntegralSpec& spec, double t) {
    const double n = spec.n;
    const cplx s{-spec.delta, t};
    const cplx num = (1.0 - n * s) / 2.0;
    const cplx den = (n * s + 1.0) / 2.0 + static_cast<double>(spec.nu) - n / 2.0;
    const double nearest = std::round(den.real());
    if (nearest <= 0.0 && std::abs(den - nearest) < 1e-12) return {0.0, 0.0};  // 1/Gamma vanishes at its poles
    cplx log_value = log_gamma(num) - log_gamma(den) + s * std::log(spec.y);
    if (spec.k_order > 0) log_value -= static_cast<double>(spec.k_order) * std::log(s + spec.lambda);
    return std::exp(log_value) / (2.0 * std::numbers::pi);
}

OmegaResult omega_integral(const LineIntegralSpec& spec, const QuadratureConfig& q) {
    spec.validate();
    const double n = spec.n;
    const double log_scale = n * std::log(n / 2.0) - std::log(spec.y);
    // stationary-phase rate |log(n^n <t>^n / (2^n y))| plus slack for the
    // (s + Lambda)^{-k} factor and the small-t corrections to Stirling
    auto rate = [&](double t) { return std::abs(log_scale + 0.5 * n * std::log1p(t * t)) + 2.0; };
    auto f = [&](double t) { return omega_integrand(spec, t); };
    const auto r = integrate_phase_adaptive(f, -spec.T, spec.T, rate, q, "special_functions", "omega_integral");
    return OmegaResult{r.value, r.error_estimate, r.abs_integral, r.panels};
}

double bessel_main_term(const LineIntegralSpec& spec) {
    const double n = spec.n;
    const double order = spec.nu + spec.k_order - n / 2.0;
    return std::pow(n / 2.0, spec.k_order - 1) * std::pow(spec.y, 0.5 + (1.0 - spec.nu - spec.k_order) / n) *
           bessel_j(order, 2.0 * std::pow(spec.y, 1.0 / n));
}

double omega_error_scale(const LineIntegralSpec& spec) {
    const double n = spec.n;
    const double e = n / 2.0 - spec.nu - spec.k_order;
    const double log_term = std::log(std::pow(n * spec.T / 2.0, n) / spec.y);
    return std::pow(spec.T, e + n * spec.delta) + std::pow(spec.T, e) / log_term;
}

double fdt_bound(double m) {
    if (!(m > 0.0)) throw InvalidArgument("special_functions", "fdt_bound", "M must be > 0");
    return 2.0 / (std::numbers::pi * m);
}

PerronResult perron_check(std::span<const cplx> coeffs, double sigma, double x, double T, const QuadratureConfig& q) {
    if (!(sigma > 0.0)) throw InvalidArgument("special_functions", "perron_check", "sigma must be > 0");
    if (!(x >= 2.0) || !(T >= 2.0)) throw InvalidArgument("special_functions", "perron_check", "x and T must be >= 2");

    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != cplx{0.0, 0.0}) support.push_back(i);

    PerronResult out;
    std::vector<cplx> partial;
    std::vector<double> abs_weighted;
    double max_rate = 0.0;
    for (std::size_t i : support) {
        const double n = static_cast<double>(i + 1);
        if (n <= x) partial.push_back(coeffs[i]);
        abs_weighted.push_back(std::abs(coeffs[i]) * std::pow(n, -sigma));
        max_rate = std::max(max_rate, std::abs(std::log(x / n)));
    }
    out.partial_sum = pairwise_sum(partial);

    double local_max = 0.0;
    for (std::size_t i : support) {
        const double n = static_cast<double>(i + 1);
        if (n >= 0.75 * x && n <= 1.25 * x) local_max = std::max(local_max, std::abs(coeffs[i]));
    }
    out.budget = std::pow(x, sigma) / T * pairwise_sum(abs_weighted) + (1.0 + x * std::log(x) / T) * local_max;

    if (!support.empty()) {
        const double log_x = std::log(x);
        auto f = [&](double t) {
            const cplx s{sigma, t};
            cplx d{0.0, 0.0};
            for (std::size_t i : support) d += coeffs[i] * std::exp(-s * std::log(static_cast<double>(i + 1)));
            return d * std::exp(s * log_x) / s / (2.0 * std::numbers::pi);
        };
        auto rate = [&](double) { return max_rate + 1.0; };
        const auto r = integrate_phase_adaptive(f, -T, T, rate, q, "special_functions", "perron_check");
        out.integral = r.value;
        out.quadrature_error = r.error_estimate;
    }
    out.error = std::abs(out.integral - out.partial_sum);
    out.ok = out.error <= out.budget * (1.0 + 1e-6);
    return out;
}

}  // namespace voronoi3
