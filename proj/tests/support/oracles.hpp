#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library's numerical paths.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// d3(m) for m = 0..n by counting ordered triples a*b*c = m.
std::vector<std::int64_t> d3_counts(std::int64_t n);

/// tau(0..n) from q * prod_{j<=n} (1 - q^j)^24, one linear factor at a time.
std::vector<long double> tau_naive(int n);

/// Schur polynomial s_{(a+b, b, 0)}(x1, x2, x3) by enumerating every filling of
/// the two-row diagram and keeping the semistandard ones.
cplx schur_by_fillings(int a, int b, cplx x1, cplx x2, cplx x3);

/// Naive Kloosterman sum with phases from std::polar on (h x + m xbar)/k,
/// inverse found by search.
cplx kloosterman_naive(std::int64_t h, std::int64_t m, std::int64_t k);

/// sum_{m<=x} a(m) e(m h / k) evaluated at x with no shared code.
cplx twisted_sum(double x, std::int64_t h, std::int64_t k, const std::function<cplx(std::int64_t)>& a);

/// Midpoint Riemann sum of |S(x)|^2 over [1, X] with the given step.
double riemann_second_moment(double X, std::int64_t h, std::int64_t k, const std::function<cplx(std::int64_t)>& a,
                             double step);

/// Smallest n in [ceil N, floor 2N] with ||(n + 1/2)/d^2|| >= c/(d(1 + log^2 k))
/// for every d | k with d <= sqrt(2N); -1 when none exists.
std::int64_t nk_scan(double N, std::int64_t k, double c);

/// int_X^{2X} (x^{2/3} / (3 pi^2)) cos^2(6 pi x^{1/3}) dx from its antiderivative.
double single_cosine_moment(double X);

/// J_{1/2} and J_{-1/2} in closed form.
double j_half(double x);
double j_minus_half(double x);

}  // namespace oracle
