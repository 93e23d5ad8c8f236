#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voronoi3/hecke.hpp"
#include "voronoi3/kloosterman.hpp"
#include "voronoi3/quadrature.hpp"
#include "voronoi3/voronoi.hpp"

namespace voronoi3 {

/// Integral over [a, b] of |sum_{m<=x} A(m,1) e(mh/k)|^2 dx, evaluated
/// exactly as a sum over the unit intervals on which the sum is constant.
/// Requires 1 <= a <= b.
double second_moment_interval(double a, double b, const ReducedFraction& fraction, const CoefficientTable& table);

/// second_moment_interval(1, X, ...).
double second_moment_exact(double X, const ReducedFraction& fraction, const CoefficientTable& table);

/// c k^2 X^{5/3 + 2 vartheta + epsilon}.
double second_moment_bound(double X, std::int64_t k, const ThetaBound& theta, double c);

struct MomentRow {
    double X_lo = 1;
    double X_hi = 1;
    std::int64_t k = 1;
    double integral = 0;
    double bound = 0;     ///< evaluated at X_hi
    double ratio = 0;
    bool trivial_regime = false;  ///< k > X^{2/3}: the bound says nothing beyond the trivial one
};

/// One row per X in the grid, over [1, X] or, with dyadic set, over [X, 2X].
std::vector<MomentRow> second_moment_report(const std::vector<double>& X_grid, const ReducedFraction& fraction,
                                            const CoefficientTable& table, const ThetaBound& theta, double c,
                                            bool dyadic = false, unsigned threads = 1);

/// True when the ratio column is non-increasing along X (rows sorted by X_hi).
bool ratios_nonincreasing(const std::vector<MomentRow>& rows, double rel_slack = 1e-12);

struct MainMomentResult {
    double X = 0;
    std::int64_t N_k = 0;
    double integral = 0;        ///< integral over [X, 2X] of |main term|^2
    double error_estimate = 0;
    double bound = 0;           ///< c k^2 X^{5/3 + vartheta + epsilon}
    double ratio = 0;
    std::size_t panels = 0;
};

/// Quadrature of the squared main term (with N = X) over [X, 2X].
MainMomentResult main_term_second_moment(double X, const ReducedFraction& fraction, const CoefficientTable& table,
                                         const ThetaBound& theta, double c, const QuadratureConfig& cfg = {},
                                         double c_nk = 1.0 / 20.0);

struct PointwiseRow {
    double x = 0;
    std::int64_t k = 1;
    double abs_sum = 0;
    double bound_a = 0;
    double ratio_a = 0;
    std::optional<double> bound_b;  ///< present only when k <= c_hyp x^{2/3 - 2 vartheta}
    std::optional<double> ratio_b;
    double N_used = 0;
    bool hypothesis_b = false;
};

/// c (k^{1/2+eps} x^{2/3} + k x^{1/3+vartheta+eps}).
double pointwise_bound_a(double x, std::int64_t k, const ThetaBound& theta, double c);

/// c k^{3/4} x^{1/2+vartheta/2+eps}, or nothing when k > c_hyp x^{2/3-2 vartheta}.
std::optional<double> pointwise_bound_b(double x, std::int64_t k, const ThetaBound& theta, double c,
                                        double c_hyp = 1.0);

std::vector<PointwiseRow> pointwise_report(const std::vector<double>& x_grid, const ReducedFraction& fraction,
                                           const CoefficientTable& table, const ThetaBound& theta, double c,
                                           unsigned threads = 1, double c_hyp = 1.0);

}  // namespace voronoi3
