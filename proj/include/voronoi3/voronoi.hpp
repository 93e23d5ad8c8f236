#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "voronoi3/hecke.hpp"
#include "voronoi3/kloosterman.hpp"

namespace voronoi3 {

/// Inputs of one evaluation of the truncated identity
///   sum_{m<=x} A(m,1) e(mh/k) ~ main term + budget.
struct VoronoiParams {
    double x = 2;
    double N = 2;
    ReducedFraction fraction;
    ThetaBound theta;
    double c_nk = 1.0 / 20.0;    ///< margin constant of the N_k selection
    double c_k_small = 0.1;      ///< k <= c_k_small (N x)^{1/3}
    double max_n_over_x = 1.0;   ///< N <= max_n_over_x * x

    /// Throws InvalidArgument naming the first violated precondition.
    void validate() const;
};

struct NkMargin {
    std::int64_t d = 1;
    double margin = 0;     ///< distance of (N_k + 1/2)/d^2 to the nearest integer
    double threshold = 0;  ///< c_nk / (d (1 + log^2 k))
};

struct NkSelection {
    double N = 2;
    std::int64_t k = 1;
    double c_nk = 1.0 / 20.0;
    std::int64_t N_k = 2;
    std::vector<NkMargin> margins;  ///< one per d | k with d <= sqrt(2N)
};

/// Smallest integer N_k in [ceil(N), floor(2N)] with every divisor margin at
/// or above its threshold. Throws NoAdmissibleNk; the documented caller
/// policy is to retry with c_nk / 2.
NkSelection select_nk(double N, std::int64_t k, double c_nk = 1.0 / 20.0);

/// select_nk, halving c_nk on NoAdmissibleNk (at most 30 times).
NkSelection select_nk_with_retry(double N, std::int64_t k, double c_nk = 1.0 / 20.0);

/// Recomputes every margin in floating point, independently of the exact
/// residue arithmetic used by the search.
bool recheck_nk(const NkSelection& nk);

/// sum_{m <= x} A(m, 1) e(m h / k), closed at m = x, pairwise summed.
std::complex<double> direct_sum(double x, const ReducedFraction& fraction, const CoefficientTable& table);

enum class SumOrder { ascending, descending };

/// The dual sum
///   x^{1/3}/(pi sqrt 3) sum_{d|k} 1/d sum_{d^2 m <= N_k} A(d,m) m^{-2/3}
///     S(hbar, m; k/d) cos(6 pi d^{2/3} (m x)^{1/3} / k)
/// precomputed as amplitudes and frequencies in x^{1/3}.
class MainTermExpansion {
public:
    MainTermExpansion(const ReducedFraction& fraction, const NkSelection& nk, const CoefficientTable& table);

    /// Real for real-valued tables.
    std::complex<double> operator()(double x, SumOrder order = SumOrder::ascending) const;

    /// Largest frequency 6 pi (d^2 m)^{1/3} / k over the terms.
    double max_frequency() const { return max_frequency_; }
    std::size_t size() const { return amplitude_.size(); }

    /// Number of (d, m) terms contributed by divisor d.
    std::size_t terms_for_divisor(std::int64_t d) const;

private:
    std::vector<std::complex<double>> amplitude_;
    std::vector<double> frequency_;
    std::vector<std::int64_t> divisor_;
    double max_frequency_ = 0;
};

std::complex<double> main_term(double x, const ReducedFraction& fraction, const NkSelection& nk,
                               const CoefficientTable& table, SumOrder order = SumOrder::ascending);

/// c1 k x^{2/3+theta+eps} N^{-1/3} + c2 k x^{1/6+eps} N^{1/6+theta}.
double error_budget(const VoronoiParams& params, double c1, double c2);

struct ResidualRow {
    double x = 0;
    double N = 0;
    std::int64_t k = 1;
    std::int64_t N_k = 0;
    std::complex<double> lhs;
    std::complex<double> main;
    std::complex<double> residual;
    double budget = 0;
    bool ok = false;     ///< |residual| <= budget
    std::string error;   ///< non-empty when the row failed to evaluate
};

struct ResidualReport {
    double c1 = 1;
    double c2 = 1;
    std::vector<ResidualRow> rows;

    bool all_ok() const;
    double max_ratio() const;  ///< max |residual| / budget
};

/// Evaluates every grid point; a failing row records its error and the grid continues.
ResidualReport residual_report(const std::vector<VoronoiParams>& grid, const CoefficientTable& table, double c1,
                               double c2, unsigned threads = 1);

}  // namespace voronoi3
