// Acceptance suite. Prints one PASS/FAIL line per criterion; every tolerance
// and runtime limit is pinned below.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "voronoi3/arith.hpp"
#include "voronoi3/constants.hpp"
#include "voronoi3/hecke.hpp"
#include "voronoi3/kloosterman.hpp"
#include "voronoi3/moments.hpp"
#include "voronoi3/report.hpp"
#include "voronoi3/special_functions.hpp"
#include "voronoi3/voronoi.hpp"

using namespace voronoi3;
namespace fs = std::filesystem;

namespace tol {
constexpr double kloosterman_rel_sqrt_k = 1e-8;  // |crt - direct| <= 1e-8 sqrt(k)
constexpr double kloosterman_imag = 1e-10;
constexpr double weil_slack = 1e-9;
constexpr double multiplicativity = 1e-9;
constexpr double sym2_a21 = 1e-15;
constexpr double omega_constant_cap = 50.0;
constexpr double cosine_identity = 1e-10;
constexpr double nk_c = 1.0 / 20.0;
constexpr double residual_ratio = 1.0;
constexpr double rms_growth = 1.10;
constexpr double riemann_rel = 1e-6;
constexpr double moment_ratio = 1.0;
constexpr double quadrature = 1e-8;
constexpr double perron_rel_slack = 1e-6;
}  // namespace tol

namespace limits {
constexpr double c1_seconds = 60;
constexpr double c3_seconds = 300;
constexpr double c4_seconds = 30;
constexpr double c5_seconds = 300;
}  // namespace limits

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && pass) detail = "first failure: " + what;
        pass = pass && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

ConstantsFile frozen() { return ConstantsFile::load(resolve_constants_path()); }

// ---------------------------------------------------------------------------

Outcome kloosterman_oracle() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst_diff = 0, worst_imag = 0, worst_weil = 0;
    for (std::int64_t k = 1; k <= 1000; ++k) {
        const double allowed = tol::kloosterman_rel_sqrt_k * std::sqrt(static_cast<double>(k));
        for (std::int64_t h = 1; h <= 12; ++h)
            for (std::int64_t m = 1; m <= 12; ++m) {
                const auto d = kloosterman_direct(h, m, k);
                const auto c = kloosterman_crt(h, m, k);
                const double bound = static_cast<double>(divisor_count(k)) *
                                     std::sqrt(static_cast<double>(gcd(gcd(h, m), k))) * std::sqrt(static_cast<double>(k));
                worst_diff = std::max(worst_diff, std::abs(d - c) / std::sqrt(static_cast<double>(k)));
                worst_imag = std::max({worst_imag, std::abs(d.imag()), std::abs(c.imag())});
                worst_weil = std::max(worst_weil, std::abs(c) / bound);
                o.require(std::abs(d - c) <= allowed, "crt vs direct at k=" + std::to_string(k));
                o.require(std::abs(d.imag()) <= tol::kloosterman_imag && std::abs(c.imag()) <= tol::kloosterman_imag,
                          "imaginary part at k=" + std::to_string(k));
                o.require(std::abs(c) <= bound + tol::weil_slack, "Weil bound at k=" + std::to_string(k));
            }
    }
    const double secs = seconds_since(t0);
    o.require(secs <= limits::c1_seconds, "runtime " + fmt(secs) + " s");
    if (o.pass)
        o.detail = "max |crt-direct|/sqrt(k)=" + fmt(worst_diff) + ", max |Im|=" + fmt(worst_imag) +
                   ", max |S|/Weil=" + fmt(worst_weil);
    return o;
}

Outcome coefficient_oracle() {
    Outcome o;
    const auto d3 = build_d3_table(10000);
    const auto counts = oracle::d3_counts(10000);
    for (std::int64_t m = 1; m <= 10000; ++m)
        o.require(d3(m, 1) == cplx(static_cast<double>(counts[static_cast<std::size_t>(m)]), 0.0),
                  "d3 at m=" + std::to_string(m));

    const auto sym = build_sym2_delta_table(10000);
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::int64_t> pick(1, 100);
    int pairs = 0;
    double worst = 0;
    while (pairs < 500) {
        const std::int64_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        if (gcd(a * b, c * d) != 1 || !sym.covers(a * c, b * d)) continue;
        const cplx prod = sym(a, b) * sym(c, d);
        const double dev = std::abs(sym(a * c, b * d) - prod) / (1.0 + std::abs(prod));
        worst = std::max(worst, dev);
        o.require(dev <= tol::multiplicativity, "multiplicativity");
        ++pairs;
    }

    const auto tau = oracle::tau_naive(3);
    o.require(tau[2] == -24.0L, "tau(2) from the q-expansion oracle");
    const double want = static_cast<double>(tau[2] * tau[2]) / 2048.0 - 1.0;
    o.require(want == -23.0 / 32.0, "lambda(2)^2 - 1 = -23/32");
    const double got = sym(2, 1).real();
    o.require(std::abs(sym(2, 1) - cplx(want)) <= tol::sym2_a21, "Sym2 A(2,1) = " + fmt(got));
    if (o.pass)
        o.detail = "d3 exact to 10^4, 500 coprime pairs max dev " + fmt(worst) + ", A(2,1)=" + fmt(got);
    return o;
}

Outcome omega_audit() {
    Outcome o;
    const auto t0 = Clock::now();
    const double C = frozen().omega_c;
    o.require(C <= tol::omega_constant_cap, "frozen omega constant " + fmt(C) + " exceeds 50");
    double worst = 0;
    std::string where;
    for (double y : {1e3, 1e4, 1e5})
        for (int nu : {0, 1})
            for (int k : {1, 2}) {
                LineIntegralSpec s;
                s.nu = nu;
                s.k_order = k;
                s.delta = 0.01;
                s.y = y;
                s.T = 4.0 * std::cbrt(y);
                s.lambda = SpectralParams{}.default_lambda();
                s.validate(SpectralParams{});
                const auto r = omega_integral(s);
                o.require(r.error_estimate <= tol::quadrature, "quadrature error at y=" + fmt(y));
                const double scale = std::pow(s.T, 1.5 - nu - k + 3 * s.delta) +
                                     std::pow(s.T, 1.5 - nu - k) / std::log(27.0 * std::pow(s.T, 3) / (8.0 * y));
                const double ratio = std::abs(r.value - bessel_main_term(s)) / scale;
                if (ratio > worst) {
                    worst = ratio;
                    where = "(nu,k)=(" + std::to_string(nu) + "," + std::to_string(k) + ") y=" + fmt(y);
                }
                o.require(ratio <= C, "residual ratio " + fmt(ratio) + " at " + where);
                if (nu == 0 && k == 1) {
                    const double c = std::cbrt(y);
                    o.require(std::abs(bessel_main_term(s) - c * std::cos(2 * c) / std::sqrt(std::numbers::pi)) <=
                                  tol::cosine_identity,
                              "closed-form identity at y=" + fmt(y));
                }
            }
    const double secs = seconds_since(t0);
    o.require(secs <= limits::c3_seconds, "runtime " + fmt(secs) + " s");
    if (o.pass) o.detail = "max ratio " + fmt(worst) + " at " + where + " <= frozen C=" + fmt(C) + ", " + fmt(secs) + " s";
    return o;
}

Outcome nk_selector() {
    Outcome o;
    const auto t0 = Clock::now();
    int cases = 0;
    for (std::int64_t k = 1; k <= 200; ++k)
        for (std::int64_t mult : {1, 2, 10, 100}) {
            const double N = static_cast<double>(k * mult);
            if (N < 2) continue;
            try {
                const auto s = select_nk(N, k, tol::nk_c);
                o.require(s.N_k >= N && static_cast<double>(s.N_k) <= 2 * N, "range at k=" + std::to_string(k));
                o.require(recheck_nk(s), "recheck at k=" + std::to_string(k) + " N=" + fmt(N));
                o.require(s.N_k == oracle::nk_scan(N, k, tol::nk_c), "scan oracle at k=" + std::to_string(k) + " N=" + fmt(N));
            } catch (const NoAdmissibleNk&) {
                o.require(false, "NoAdmissibleNk at k=" + std::to_string(k) + " N=" + fmt(N));
            }
            ++cases;
        }
    const double secs = seconds_since(t0);
    o.require(secs <= limits::c4_seconds, "runtime " + fmt(secs) + " s");
    if (o.pass) o.detail = std::to_string(cases) + " (N,k) cases agree with the scan, " + fmt(secs) + " s";
    return o;
}

Outcome voronoi_residuals() {
    Outcome o;
    const auto t0 = Clock::now();
    const ThetaBound theta;
    const auto c = frozen().lookup(SourceTag::sym2_gl2, theta);
    o.require(c.has_value(), "no frozen constants for (sym2_gl2, 5/14, 0.05)");
    if (!c) return o;
    // doubled N reaches N_k <= 4x = 4 * 10^4
    const auto table = build_sym2_delta_table(40000);
    double worst = 0, worst_growth = 0;
    for (std::int64_t k : {1, 2, 3, 4, 6}) {
        double rms[2] = {0, 0};
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<VoronoiParams> grid;
            for (int i = 0; i < 20; ++i) {
                VoronoiParams p;
                p.x = std::exp(std::log(1e3) + i * (std::log(1e4) - std::log(1e3)) / 19.0);
                p.N = (pass == 0 ? 1.0 : 2.0) * p.x;
                p.max_n_over_x = 2.0;
                p.fraction = ReducedFraction::make(1, k);
                p.theta = theta;
                grid.push_back(p);
            }
            const auto rep = residual_report(grid, table, c->voronoi_c1, c->voronoi_c2, 0);
            for (const auto& r : rep.rows) {
                o.require(r.error.empty(), "row error: " + r.error);
                rms[pass] += std::norm(r.residual);
            }
            rms[pass] = std::sqrt(rms[pass] / static_cast<double>(grid.size()));
            if (pass == 0) {
                worst = std::max(worst, rep.max_ratio());
                o.require(rep.max_ratio() <= tol::residual_ratio, "ratio " + fmt(rep.max_ratio()) + " at k=" + std::to_string(k));
            }
        }
        worst_growth = std::max(worst_growth, rms[1] / rms[0]);
        o.require(rms[1] <= tol::rms_growth * rms[0], "RMS grows by " + fmt(rms[1] / rms[0]) + " at k=" + std::to_string(k));
    }
    const double secs = seconds_since(t0);
    o.require(secs <= limits::c5_seconds, "runtime " + fmt(secs) + " s");
    if (o.pass)
        o.detail = "max |residual|/budget " + fmt(worst) + ", worst RMS(2N)/RMS(N) " + fmt(worst_growth) + ", " +
                   fmt(secs) + " s";
    return o;
}

Outcome second_moment() {
    Outcome o;
    const auto d3 = build_d3_table(100);
    const double exact = second_moment_exact(100, ReducedFraction::make(1, 2), d3);
    const double riemann = oracle::riemann_second_moment(100, 1, 2, [&](std::int64_t m) { return d3(m, 1); }, 1e-3);
    const double rel = std::abs(exact - riemann) / exact;
    o.require(rel <= tol::riemann_rel, "Riemann oracle rel " + fmt(rel));

    const auto one = CoefficientTable::tabulate(20, SourceTag::synthetic,
                                                [](std::int64_t a, std::int64_t b) { return cplx(a == 1 && b == 1); });
    o.require(second_moment_exact(10, ReducedFraction::make(1, 1), one) == 9.0, "single coefficient, k=1");
    o.require(second_moment_exact(7.5, ReducedFraction::make(1, 2), one) == 6.5, "single coefficient, k=2");

    const ThetaBound theta;
    const auto c = frozen().lookup(SourceTag::sym2_gl2, theta);
    o.require(c.has_value(), "no frozen constants for (sym2_gl2, 5/14, 0.05)");
    if (!c) return o;
    const auto sym = build_sym2_delta_table(10000);
    const auto rows = second_moment_report({1e2, 1e3, 1e4}, ReducedFraction::make(1, 3), sym, theta, c->moment_c);
    double worst = 0;
    for (const auto& r : rows) {
        worst = std::max(worst, r.ratio);
        o.require(r.ratio <= tol::moment_ratio, "ratio " + fmt(r.ratio) + " at X=" + fmt(r.X_hi));
    }
    o.require(ratios_nonincreasing(rows), "ratios increase with X");
    if (o.pass) o.detail = "Riemann rel " + fmt(rel) + ", max ratio " + fmt(worst) + " with c=" + fmt(c->moment_c);
    return o;
}

Outcome perron() {
    Outcome o;
    struct Case {
        std::vector<cplx> c;
        double x, sigma, T;
        std::string name;
    };
    const auto d3 = build_d3_table(12);
    std::vector<cplx> d3c;
    for (std::int64_t m = 1; m <= 12; ++m) d3c.push_back(d3(m, 1));
    const std::vector<Case> cases{{{1.0}, 2.5, 2.0, 100.0, "c=1 at n=1"},
                                  {std::vector<cplx>(5, 1.0), 3.5, 2.0, 200.0, "c=1 on 1..5"},
                                  {d3c, 7.5, 1.5, 150.0, "d3 on 1..12"}};
    std::string detail;
    for (const auto& cs : cases) {
        const auto r = perron_check(cs.c, cs.sigma, cs.x, cs.T);
        o.require(r.error <= r.budget * (1.0 + tol::perron_rel_slack), cs.name + ": error " + fmt(r.error) + " > budget " + fmt(r.budget));
        o.require(r.quadrature_error <= tol::quadrature, cs.name + ": quadrature error " + fmt(r.quadrature_error));
        detail += (detail.empty() ? "" : "; ") + cs.name + " err/budget " + fmt(r.error / r.budget);
    }
    if (o.pass) o.detail = detail;
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism(const std::string& cli) {
    Outcome o;
    if (cli.empty() || !fs::exists(cli)) {
        o.require(false, "CLI binary not found (pass --cli)");
        return o;
    }
    const auto dir = fs::temp_directory_path() / ("voronoi3_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs{
        {"voronoi", "voronoi --x log:1000:10000:12 --h 1 --k 3 --table sym2"},
        {"moment", "moment --X 100,1000,10000 --h 1 --k 3 --table sym2"},
        {"main", "moment --main-term --X 300,1000 --h 1 --k 2 --table sym2"},
        {"pointwise", "pointwise --x-grid 1000,2000,5000,10000 --h 2 --k 5 --table sym2"},
        {"omega", "omega --y 1000,10000 --nu 1 --k-order 1"},
        {"rs", "rs-report --x-grid 100,1000,10000 --table sym2"}};
    int compared = 0;
    for (const auto& [tag, args] : runs) {
        std::string reference;
        for (unsigned threads : {1u, 2u, 4u, 7u}) {
            const auto out = dir / (tag + "_" + std::to_string(threads) + ".csv");
            const std::string cmd = "'" + cli + "' --threads " + std::to_string(threads) + " " + args + " --out '" +
                                    out.string() + "' 2>/dev/null";
            const int status = std::system(cmd.c_str());
            o.require(status == 0, tag + " exited with status " + std::to_string(status));
            const std::string csv = slurp(out);
            o.require(!csv.empty(), tag + " wrote nothing");
            if (reference.empty()) reference = csv;
            o.require(csv == reference, tag + " differs at " + std::to_string(threads) + " threads");
            ++compared;
        }
        // replay from the emitted sidecar
        const auto replay_out = dir / (tag + "_1.csv");
        const auto saved = slurp(replay_out);
        const std::string cmd = "'" + cli + "' --config '" + (dir / (tag + "_1.csv.config.json")).string() + "' 2>/dev/null";
        o.require(std::system(cmd.c_str()) == 0, tag + " replay failed");
        o.require(slurp(replay_out) == saved, tag + " replay differs");
    }
    fs::remove_all(dir);
    if (o.pass) o.detail = std::to_string(compared) + " runs over 1, 2, 4, 7 threads byte-identical; sidecar replays identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance suite", "acceptance"};
    int only = 0;
    std::string cli;
    app.add_option("--criterion", only, "Run one criterion (1-8); 0 runs all");
    app.add_option("--cli", cli, "Path to the voronoi3 binary");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Kloosterman exhaustive oracle", kloosterman_oracle},
        {"coefficient engine oracle", coefficient_oracle},
        {"Omega vs Bessel main term", omega_audit},
        {"N_k selector", nk_selector},
        {"truncated Voronoi residual audit", voronoi_residuals},
        {"second moment", second_moment},
        {"Perron truncation", perron},
        {"determinism across thread counts", [&] { return determinism(cli); }}};

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<std::size_t>(only) != i + 1) continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %zu %-34s %s  (%.2f s)  %s\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                    seconds_since(t0), o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
