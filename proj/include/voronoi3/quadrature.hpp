#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "voronoi3/errors.hpp"
#include "voronoi3/parallel.hpp"
#include "voronoi3/summation.hpp"

namespace voronoi3 {

struct QuadratureConfig {
    double max_phase_step = 0.5;  ///< radians of integrand phase per panel
    double abs_tol = 1e-8;
    std::size_t max_panels = 2'000'000;
    unsigned threads = 1;

    void validate() const;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error_estimate = 0;  ///< sum of per-panel |Kronrod - Gauss|
    double abs_integral = 0;    ///< integral of |f|, the envelope of |value|
    std::size_t panels = 0;     ///< panels evaluated, including bisections
};

namespace detail {

// 15-point Kronrod nodes on [0, 1] (positive half) with the embedded 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct PanelSum {
    T value{};
    double error = 0;
    double abs_integral = 0;
    std::size_t panels = 0;
    bool failed = false;
};

template <class T, class F>
void gauss_kronrod(F& f, double a, double b, T& kronrod, double& error, double& abs_integral) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(centre);
    T k = fc * kKronrodWeights[7];
    T g = fc * kGaussWeights[3];
    double absk = std::abs(fc) * kKronrodWeights[7];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const T f1 = f(centre - dx);
        const T f2 = f(centre + dx);
        k += (f1 + f2) * kKronrodWeights[i];
        absk += (std::abs(f1) + std::abs(f2)) * kKronrodWeights[i];
        if (i % 2 == 1) g += (f1 + f2) * kGaussWeights[i / 2];
    }
    kronrod = k * half;
    error = std::abs((k - g) * half);
    abs_integral = absk * std::abs(half);
}

template <class T, class F>
PanelSum<T> adaptive_panel(F& f, double a, double b, double tol, int depth) {
    PanelSum<T> out;
    T k;
    double err, absint;
    gauss_kronrod(f, a, b, k, err, absint);
    out.panels = 1;
    const double noise = 50.0 * std::numeric_limits<double>::epsilon() * absint;
    if (err <= std::max(tol, noise)) {
        out.value = k;
        out.error = err;
        out.abs_integral = absint;
        return out;
    }
    if (depth >= 40) {
        out.failed = true;
        out.value = k;
        out.error = err;
        out.abs_integral = absint;
        return out;
    }
    const double mid = 0.5 * (a + b);
    auto left = adaptive_panel<T>(f, a, mid, 0.5 * tol, depth + 1);
    auto right = adaptive_panel<T>(f, mid, b, 0.5 * tol, depth + 1);
    out.value = left.value + right.value;
    out.error = left.error + right.error;
    out.abs_integral = left.abs_integral + right.abs_integral;
    out.panels = 1 + left.panels + right.panels;
    out.failed = left.failed || right.failed;
    return out;
}

}  // namespace detail

/// Panel boundaries on [a, b] such that the estimated phase advances by at
/// most cfg.max_phase_step across each panel. `phase_rate(t)` estimates
/// |d phase / dt| and should be monotone between the points where it is
/// sampled; it is evaluated at both ends of every tentative panel.
template <class Rate>
std::vector<double> phase_panels(double a, double b, Rate&& phase_rate, const QuadratureConfig& cfg,
                                 const char* module, const char* op) {
    std::vector<double> edges{a};
    const double floor_rate = 16.0 * cfg.max_phase_step / (b - a);
    double t = a;
    while (t < b) {
        double r = std::max(phase_rate(t), floor_rate);
        double w = cfg.max_phase_step / r;
        r = std::max(r, phase_rate(std::min(b, t + w)));
        w = cfg.max_phase_step / r;
        t = (b - t <= 1.0001 * w) ? b : t + w;
        edges.push_back(t);
        if (edges.size() > cfg.max_panels + 1)
            throw BudgetExceeded(module, op,
                                 std::string("BudgetExceeded: more than ") + std::to_string(cfg.max_panels) +
                                     " panels needed at the requested phase step");
    }
    return edges;
}

/// Integrates f over [a, b]: panels sized by the phase rate, each panel
/// integrated by adaptive Gauss-Kronrod (7/15) with a tolerance share
/// proportional to its width. Panel sums are combined pairwise in panel
/// order, so the result does not depend on cfg.threads.
template <class F, class Rate>
auto integrate_phase_adaptive(F&& f, double a, double b, Rate&& phase_rate, const QuadratureConfig& cfg,
                              const char* module = "special_functions", const char* op = "quadrature")
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, double>>> {
    using T = std::decay_t<std::invoke_result_t<F&, double>>;
    cfg.validate();
    QuadratureResult<T> out;
    if (!(b > a)) return out;
    const auto edges = phase_panels(a, b, phase_rate, cfg, module, op);
    const std::size_t n = edges.size() - 1;
    std::vector<detail::PanelSum<T>> parts(n);
    const double length = b - a;
    parallel_for(n, cfg.threads, [&](std::size_t i) {
        const double lo = edges[i], hi = edges[i + 1];
        parts[i] = detail::adaptive_panel<T>(f, lo, hi, cfg.abs_tol * (hi - lo) / length, 0);
    });
    std::vector<T> values(n);
    std::vector<double> errors(n), absints(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (parts[i].failed)
            throw BudgetExceeded(module, op,
                                 "BudgetExceeded: panel [" + std::to_string(edges[i]) + ", " +
                                     std::to_string(edges[i + 1]) + "] did not converge");
        values[i] = parts[i].value;
        errors[i] = parts[i].error;
        absints[i] = parts[i].abs_integral;
        out.panels += parts[i].panels;
    }
    if (out.panels > cfg.max_panels)
        throw BudgetExceeded(module, op,
                             "BudgetExceeded: " + std::to_string(out.panels) + " panels exceed max_panels " +
                                 std::to_string(cfg.max_panels));
    out.value = pairwise_sum(values);
    out.error_estimate = pairwise_sum(errors);
    out.abs_integral = pairwise_sum(absints);
    return out;
}

}  // namespace voronoi3
