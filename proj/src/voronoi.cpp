#include "voronoi3/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "voronoi3/arith.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/parallel.hpp"
#include "voronoi3/summation.hpp"

namespace voronoi3 {

namespace {


InvalidArgument param_error(const std::string& what) { return InvalidArgument("voronoi", "VoronoiParams", what); }

double nk_threshold(std::int64_t d, std::int64_t k, double c_nk) {
    const double lk = std::log(static_cast<double>(k));
    return c_nk / (static_cast<double>(d) * (1.0 + lk * lk));
}

std::vector<std::int64_t> small_divisors(std::int64_t k, double N) {
    std::vector<std::int64_t> out;
    for (std::int64_t d : divisors(k))
        if (static_cast<double>(d * d) <= 2.0 * N) out.push_back(d);
    return out;
}

std::vector<cplx> unit_phases(std::int64_t k) {
    std::vector<cplx> e(static_cast<std::size_t>(k));
    for (std::int64_t j = 0; j < k; ++j) {
        const std::int64_t folded = 2 * j > k ? j - k : j;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(folded) / static_cast<double>(k);
        e[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
    }
    return e;
}

}  // namespace

void VoronoiParams::validate() const {
    theta.validate();
    const double k = static_cast<double>(fraction.k);
    if (fraction.k < 1) throw param_error("k must satisfy k >= 1");
    if (!(x >= 2.0)) throw param_error("x must satisfy x >= 2");
    if (!(N >= 2.0)) throw param_error("N must satisfy N >= 2");
    if (!(N <= max_n_over_x * x)) throw param_error("N must satisfy N <= C x (C = " + std::to_string(max_n_over_x) + ")");
    if (!(k <= N)) throw param_error("k must satisfy k <= N");
    if (!(k <= x)) throw param_error("k must satisfy k <= x");
    if (!(k <= c_k_small * std::cbrt(N * x)))
        throw param_error("k must satisfy k <= " + std::to_string(c_k_small) + " (N x)^{1/3}");
    if (!(c_nk > 0.0)) throw param_error("c_nk must be > 0");
}

NkSelection select_nk(double N, std::int64_t k, double c_nk) {
    if (k < 1) throw InvalidArgument("voronoi", "select_nk", "k must satisfy k >= 1");
    if (!(N >= 2.0)) throw InvalidArgument("voronoi", "select_nk", "N must satisfy N >= 2");
    if (static_cast<double>(k) > N) throw InvalidArgument("voronoi", "select_nk", "k must satisfy k <= N");

    const auto lo = static_cast<std::int64_t>(std::ceil(N));
    const auto hi = static_cast<std::int64_t>(std::floor(2.0 * N));
    const auto ds = small_divisors(k, N);

    for (std::int64_t n = lo; n <= hi; ++n) {
        NkSelection sel{N, k, c_nk, n, {}};
        bool pass = true;
        for (std::int64_t d : ds) {
            // ||(n + 1/2)/d^2|| = min(r, 2d^2 - r) / (2 d^2), r = (2n + 1) mod 2d^2
            const std::int64_t q = 2 * d * d;
            const std::int64_t r = (2 * n + 1) % q;
            const double margin = static_cast<double>(std::min(r, q - r)) / static_cast<double>(q);
            const double thr = nk_threshold(d, k, c_nk);
            sel.margins.push_back({d, margin, thr});
            if (margin < thr) {
                pass = false;
                break;
            }
        }
        if (pass) return sel;
    }
    throw NoAdmissibleNk("voronoi", "select_nk",
                         "NoAdmissibleNk: no N_k in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                             "] for k=" + std::to_string(k) + " at c_nk=" + std::to_string(c_nk));
}

NkSelection select_nk_with_retry(double N, std::int64_t k, double c_nk) {
    for (int attempt = 0;; ++attempt) {
        try {
            return select_nk(N, k, c_nk);
        } catch (const NoAdmissibleNk&) {
            if (attempt >= 30) throw;
            c_nk /= 2.0;
        }
    }
}

bool recheck_nk(const NkSelection& nk) {
    if (nk.N_k < static_cast<std::int64_t>(std::ceil(nk.N)) || static_cast<double>(nk.N_k) > 2.0 * nk.N) return false;
    for (std::int64_t d = 1; d <= nk.k; ++d) {
        if (nk.k % d != 0 || static_cast<double>(d) > std::sqrt(2.0 * nk.N)) continue;
        const double v = (static_cast<double>(nk.N_k) + 0.5) / static_cast<double>(d * d);
        const double dist = std::abs(v - std::round(v));
        const double lk = std::log(static_cast<double>(nk.k));
        if (dist < nk.c_nk / (static_cast<double>(d) * (1.0 + lk * lk)) * (1.0 - 1e-12)) return false;
    }
    return true;
}

cplx direct_sum(double x, const ReducedFraction& fraction, const CoefficientTable& table) {
    if (x < 1.0) return {0.0, 0.0};
    const auto top = static_cast<std::int64_t>(std::floor(x));
    if (!table.covers(top, 1))
        throw LimitExceeded("voronoi", "direct_sum",
                            "LimitExceeded: x=" + std::to_string(x) + " beyond table limit " +
                                std::to_string(table.limit()));
    const auto phases = unit_phases(fraction.k);
    const std::int64_t h = mod(fraction.h, fraction.k);
    std::vector<cplx> terms(static_cast<std::size_t>(top));
    std::int64_t residue = 0;
    for (std::int64_t m = 1; m <= top; ++m) {
        residue = (residue + h) % fraction.k;
        terms[static_cast<std::size_t>(m - 1)] = table(m, 1) * phases[static_cast<std::size_t>(residue)];
    }
    return pairwise_sum(terms);
}

MainTermExpansion::MainTermExpansion(const ReducedFraction& fraction, const NkSelection& nk,
                                     const CoefficientTable& table) {
    const std::int64_t k = fraction.k;
    if (nk.k != k) throw InvalidArgument("voronoi", "main_term", "N_k selection was made for a different k");
    for (std::int64_t d : divisors(k)) {
        const std::int64_t q = k / d;
        const std::int64_t top = nk.N_k / (d * d);
        if (top < 1) continue;
        if (!table.covers(d, top))
            throw LimitExceeded("voronoi", "main_term",
                                "LimitExceeded: A(" + std::to_string(d) + ", m) needed up to m=" + std::to_string(top) +
                                    " but table limit is " + std::to_string(table.limit()));
        // S(hbar, m; q) depends only on m mod q
        std::vector<double> kloost(static_cast<std::size_t>(q));
        for (std::int64_t r = 0; r < q; ++r) kloost[static_cast<std::size_t>(r)] = kloosterman_crt(fraction.h_bar, r, q).real();
        for (std::int64_t m = 1; m <= top; ++m) {
            const double md = static_cast<double>(m);
            amplitude_.push_back(table(d, m) * kloost[static_cast<std::size_t>(m % q)] /
                                 (static_cast<double>(d) * std::cbrt(md * md)));
            const double freq = 6.0 * std::numbers::pi * std::cbrt(static_cast<double>(d * d) * md) / static_cast<double>(k);
            frequency_.push_back(freq);
            divisor_.push_back(d);
            max_frequency_ = std::max(max_frequency_, freq);
        }
    }
}

cplx MainTermExpansion::operator()(double x, SumOrder order) const {
    const double cx = std::cbrt(x);
    const std::size_t n = amplitude_.size();
    std::vector<cplx> terms(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = order == SumOrder::ascending ? i : n - 1 - i;
        terms[i] = amplitude_[j] * std::cos(frequency_[j] * cx);
    }
    return cx / (std::numbers::pi * std::sqrt(3.0)) * pairwise_sum(terms);
}

std::size_t MainTermExpansion::terms_for_divisor(std::int64_t d) const {
    return static_cast<std::size_t>(std::count(divisor_.begin(), divisor_.end(), d));
}

cplx main_term(double x, const ReducedFraction& fraction, const NkSelection& nk, const CoefficientTable& table,
               SumOrder order) {
    return MainTermExpansion(fraction, nk, table)(x, order);
}

double error_budget(const VoronoiParams& p, double c1, double c2) {
    const double k = static_cast<double>(p.fraction.k);
    const double th = p.theta.vartheta, eps = p.theta.epsilon;
    return c1 * k * std::pow(p.x, 2.0 / 3.0 + th + eps) * std::pow(p.N, -1.0 / 3.0) +
           c2 * k * std::pow(p.x, 1.0 / 6.0 + eps) * std::pow(p.N, 1.0 / 6.0 + th);
}

bool ResidualReport::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ResidualRow& r) { return r.error.empty() && r.ok; });
}

double ResidualReport::max_ratio() const {
    double worst = 0.0;
    for (const auto& r : rows)
        if (r.error.empty() && r.budget > 0) worst = std::max(worst, std::abs(r.residual) / r.budget);
    return worst;
}

ResidualReport residual_report(const std::vector<VoronoiParams>& grid, const CoefficientTable& table, double c1,
                               double c2, unsigned threads) {
    ResidualReport report;
    report.c1 = c1;
    report.c2 = c2;
    report.rows.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        const VoronoiParams& p = grid[i];
        ResidualRow& row = report.rows[i];
        row.x = p.x;
        row.N = p.N;
        row.k = p.fraction.k;
        try {
            p.validate();
            const NkSelection nk = select_nk_with_retry(p.N, p.fraction.k, p.c_nk);
            row.N_k = nk.N_k;
            row.lhs = direct_sum(p.x, p.fraction, table);
            row.main = main_term(p.x, p.fraction, nk, table);
            row.residual = row.lhs - row.main;
            row.budget = error_budget(p, c1, c2);
            row.ok = std::abs(row.residual) <= row.budget;
        } catch (const std::exception& e) {
            row.error = e.what();
            row.ok = false;
        }
    });
    return report;
}

}  // namespace voronoi3
