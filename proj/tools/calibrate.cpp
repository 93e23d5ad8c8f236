// Fits the implied constants once and writes them to the constants file.
// Calibration grids are kept apart from the grids the acceptance suite uses.
#include <algorithm>
#include <cmath>
#include <iostream>

#include <CLI11.hpp>

#include "voronoi3/constants.hpp"
#include "voronoi3/hecke.hpp"
#include "voronoi3/moments.hpp"
#include "voronoi3/parallel.hpp"
#include "voronoi3/report.hpp"
#include "voronoi3/special_functions.hpp"
#include "voronoi3/voronoi.hpp"

using namespace voronoi3;

namespace {

constexpr double kSafety = 2.0;

double fit_voronoi(const CoefficientTable& table, const ThetaBound& theta, unsigned threads) {
    std::vector<VoronoiParams> grid;
    for (std::int64_t k : {1, 2, 3, 4, 6}) {
        for (int i = 0; i < 24; ++i) {
            VoronoiParams p;
            p.x = std::exp(std::log(200.0) + i * (std::log(2000.0) - std::log(200.0)) / 23.0);
            for (double factor : {1.0, 2.0}) {
                p.N = factor * p.x;
                p.max_n_over_x = 2.0;
                p.fraction = ReducedFraction::make(1, k);
                p.theta = theta;
                try {
                    p.validate();
                } catch (const InvalidArgument&) {
                    continue;
                }
                grid.push_back(p);
            }
        }
    }
    const auto rep = residual_report(grid, table, 1.0, 1.0, threads);
    for (const auto& r : rep.rows)
        if (!r.error.empty()) throw std::runtime_error("calibration row failed: " + r.error);
    return kSafety * rep.max_ratio();
}

double fit_moment(const CoefficientTable& table, const ThetaBound& theta) {
    double worst = 0;
    for (std::int64_t k : {1, 3})
        for (const auto& r : second_moment_report({20, 50, 80}, ReducedFraction::make(1, k), table, theta, 1.0))
            worst = std::max(worst, r.ratio);
    return kSafety * worst;
}

double fit_main_moment(const CoefficientTable& table, const ThetaBound& theta, unsigned threads) {
    QuadratureConfig q;
    q.threads = threads;
    double worst = 0;
    for (std::int64_t k : {1, 3})
        for (double X : {100.0, 300.0})
            worst = std::max(worst, main_term_second_moment(X, ReducedFraction::make(1, k), table, theta, 1.0, q).ratio);
    return kSafety * worst;
}

double fit_pointwise(const CoefficientTable& table, const ThetaBound& theta) {
    std::vector<double> xs;
    for (int i = 0; i <= 80; ++i) xs.push_back(200.0 + 5.0 * i + 0.5);
    double worst = 0;
    for (std::int64_t k : {1, 2, 3, 5})
        for (const auto& r : pointwise_report(xs, ReducedFraction::make(1, k), table, theta, 1.0)) {
            worst = std::max(worst, r.ratio_a);
            if (r.ratio_b) worst = std::max(worst, *r.ratio_b);
        }
    return kSafety * worst;
}

double fit_omega(unsigned threads) {
    std::vector<LineIntegralSpec> specs;
    for (double y : {500.0, 3000.0, 30000.0})
        for (int nu : {0, 1})
            for (int k : {1, 2}) {
                LineIntegralSpec s;
                s.nu = nu;
                s.k_order = k;
                s.y = y;
                s.T = 4.0 * std::cbrt(y);
                s.lambda = SpectralParams{}.default_lambda();
                specs.push_back(s);
            }
    std::vector<double> ratio(specs.size());
    parallel_for(specs.size(), threads, [&](std::size_t i) {
        const auto r = omega_integral(specs[i]);
        ratio[i] = std::abs(r.value - bessel_main_term(specs[i])) / omega_error_scale(specs[i]);
    });
    for (std::size_t i = 0; i < specs.size(); ++i)
        std::cerr << "omega y=" << specs[i].y << " nu=" << specs[i].nu << " k=" << specs[i].k_order
                  << " ratio=" << format_double(ratio[i]) << '\n';
    return kSafety * *std::max_element(ratio.begin(), ratio.end());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fit the frozen implied constants", "voronoi3_calibrate"};
    std::string out = resolve_constants_path().string();
    unsigned threads = 0;
    app.add_option("--out", out, "Constants file to write")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    CLI11_PARSE(app, argc, argv);

    ConstantsFile file;
    file.omega_c = fit_omega(threads);
    std::cerr << "omega_c=" << format_double(file.omega_c) << '\n';

    // N_k <= 2N with N up to 2x, x <= 2000
    const auto table = build_sym2_delta_table(8001);
    for (double vartheta : {5.0 / 14.0, 0.0}) {
        const ThetaBound theta{vartheta, 0.05};
        CalibratedConstants c;
        c.source = to_string(SourceTag::sym2_gl2);
        c.vartheta = vartheta;
        c.epsilon = theta.epsilon;
        c.voronoi_c1 = c.voronoi_c2 = fit_voronoi(table, theta, threads);
        c.moment_c = fit_moment(table, theta);
        c.main_moment_c = fit_main_moment(table, theta, threads);
        c.pointwise_c = fit_pointwise(table, theta);
        std::cerr << "sym2_gl2 vartheta=" << format_double(vartheta) << " c1=c2=" << format_double(c.voronoi_c1)
                  << " moment=" << format_double(c.moment_c) << " main_moment=" << format_double(c.main_moment_c)
                  << " pointwise=" << format_double(c.pointwise_c) << '\n';
        file.upsert(c);
    }
    file.save(out);
    std::cerr << "wrote " << out << '\n';
    return 0;
}
