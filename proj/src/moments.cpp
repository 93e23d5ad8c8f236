#include "voronoi3/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "voronoi3/arith.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/parallel.hpp"
#include "voronoi3/summation.hpp"

namespace voronoi3 {

double second_moment_interval(double a, double b, const ReducedFraction& fraction, const CoefficientTable& table) {
    if (!(a >= 1.0)) throw InvalidArgument("moments", "second_moment", "interval must satisfy a >= 1");
    if (!(b >= a)) throw InvalidArgument("moments", "second_moment", "interval must satisfy b >= a");
    const auto top = static_cast<std::int64_t>(std::floor(b));
    if (!table.covers(top, 1))
        throw LimitExceeded("moments", "second_moment",
                            "LimitExceeded: X=" + std::to_string(b) + " beyond table limit " +
                                std::to_string(table.limit()));
    const std::int64_t k = fraction.k;
    const std::int64_t h = mod(fraction.h, k);
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(2 * j > k ? j - k : j) / static_cast<double>(k);
        phase[static_cast<std::size_t>(j)] = {std::cos(t), std::sin(t)};
    }
    // S(x) is constant on [n, n+1)
    CompensatedSum<std::complex<double>> S;
    std::vector<double> pieces;
    pieces.reserve(static_cast<std::size_t>(top));
    std::int64_t residue = 0;
    for (std::int64_t n = 1; n <= top; ++n) {
        residue = (residue + h) % k;
        S.add(table(n, 1) * phase[static_cast<std::size_t>(residue)]);
        const double lo = std::max(a, static_cast<double>(n));
        const double hi = std::min(b, static_cast<double>(n + 1));
        if (hi > lo) pieces.push_back(std::norm(S.value()) * (hi - lo));
    }
    return pairwise_sum(pieces);
}

double second_moment_exact(double X, const ReducedFraction& fraction, const CoefficientTable& table) {
    return second_moment_interval(1.0, X, fraction, table);
}

double second_moment_bound(double X, std::int64_t k, const ThetaBound& theta, double c) {
    const double kd = static_cast<double>(k);
    return c * kd * kd * std::pow(X, 5.0 / 3.0 + 2.0 * theta.vartheta + theta.epsilon);
}

std::vector<MomentRow> second_moment_report(const std::vector<double>& X_grid, const ReducedFraction& fraction,
                                            const CoefficientTable& table, const ThetaBound& theta, double c,
                                            bool dyadic, unsigned threads) {
    theta.validate();
    std::vector<MomentRow> rows(X_grid.size());
    parallel_for(X_grid.size(), threads, [&](std::size_t i) {
        MomentRow& r = rows[i];
        r.k = fraction.k;
        r.X_lo = dyadic ? X_grid[i] : 1.0;
        r.X_hi = dyadic ? 2.0 * X_grid[i] : X_grid[i];
        r.integral = second_moment_interval(r.X_lo, r.X_hi, fraction, table);
        r.bound = second_moment_bound(r.X_hi, fraction.k, theta, c);
        r.ratio = r.bound > 0 ? r.integral / r.bound : 0.0;
        r.trivial_regime = static_cast<double>(fraction.k) > std::pow(r.X_hi, 2.0 / 3.0);
    });
    return rows;
}

bool ratios_nonincreasing(const std::vector<MomentRow>& rows, double rel_slack) {
    std::vector<const MomentRow*> sorted;
    for (const auto& r : rows) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->X_hi < b->X_hi; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->ratio > sorted[i - 1]->ratio * (1.0 + rel_slack)) return false;
    return true;
}

MainMomentResult main_term_second_moment(double X, const ReducedFraction& fraction, const CoefficientTable& table,
                                         const ThetaBound& theta, double c, const QuadratureConfig& cfg,
                                         double c_nk) {
    theta.validate();
    if (!(X >= 2.0)) throw InvalidArgument("moments", "main_term_second_moment", "X must satisfy X >= 2");
    const NkSelection nk = select_nk_with_retry(X, fraction.k, c_nk);
    const MainTermExpansion expansion(fraction, nk, table);

    MainMomentResult out;
    out.X = X;
    out.N_k = nk.N_k;
    const double kd = static_cast<double>(fraction.k);
    out.bound = c * kd * kd * std::pow(X, 5.0 / 3.0 + theta.vartheta + theta.epsilon);
    if (expansion.size() > 0) {
        const double fmax = expansion.max_frequency();
        // d/dx of the phase f x^{1/3} is f x^{-2/3}/3; squaring doubles it
        auto rate = [fmax](double x) { return 2.0 * fmax / (3.0 * std::cbrt(x * x)) + 1e-3; };
        auto integrand = [&expansion](double x) { return std::norm(expansion(x)); };
        const auto q = integrate_phase_adaptive(integrand, X, 2.0 * X, rate, cfg, "moments", "main_term_second_moment");
        out.integral = q.value;
        out.error_estimate = q.error_estimate;
        out.panels = q.panels;
    }
    out.ratio = out.bound > 0 ? out.integral / out.bound : 0.0;
    return out;
}

double pointwise_bound_a(double x, std::int64_t k, const ThetaBound& theta, double c) {
    const double kd = static_cast<double>(k);
    return c * (std::pow(kd, 0.5 + theta.epsilon) * std::pow(x, 2.0 / 3.0) +
                kd * std::pow(x, 1.0 / 3.0 + theta.vartheta + theta.epsilon));
}

std::optional<double> pointwise_bound_b(double x, std::int64_t k, const ThetaBound& theta, double c, double c_hyp) {
    const double th = theta.vartheta, eps = theta.epsilon;
    const double kd = static_cast<double>(k);
    if (th > 1.0 / 3.0 || kd > c_hyp * std::pow(x, 2.0 / 3.0 - 2.0 * th)) return std::nullopt;
    return c * (std::pow(kd, 0.75) * std::pow(x, 0.5 + th / 2.0 + eps) +
                std::pow(kd, 9.0 / 8.0 + 0.75 * th) * std::pow(x, 0.25 + 1.5 * th * th + 0.75 * th + eps));
}

std::vector<PointwiseRow> pointwise_report(const std::vector<double>& x_grid, const ReducedFraction& fraction,
                                           const CoefficientTable& table, const ThetaBound& theta, double c,
                                           unsigned threads, double c_hyp) {
    theta.validate();
    std::vector<PointwiseRow> rows(x_grid.size());
    parallel_for(x_grid.size(), threads, [&](std::size_t i) {
        PointwiseRow& r = rows[i];
        r.x = x_grid[i];
        r.k = fraction.k;
        r.abs_sum = std::abs(direct_sum(r.x, fraction, table));
        r.bound_a = pointwise_bound_a(r.x, r.k, theta, c);
        r.ratio_a = r.abs_sum / r.bound_a;
        r.bound_b = pointwise_bound_b(r.x, r.k, theta, c, c_hyp);
        r.hypothesis_b = r.bound_b.has_value();
        if (r.bound_b) {
            r.ratio_b = r.abs_sum / *r.bound_b;
            const double kd = static_cast<double>(r.k);
            r.N_used = std::pow(kd, 0.75) * std::pow(r.x, 0.5 + 1.5 * theta.vartheta);
        } else {
            r.N_used = r.x;
        }
    });
    return rows;
}

}  // namespace voronoi3
