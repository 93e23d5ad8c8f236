#include "voronoi3/bessel.hpp"

#include <cmath>
#include <numbers>

#include "voronoi3/errors.hpp"

namespace voronoi3 {

namespace {

constexpr double kOrderTol = 1e-12;

/// Power series sum_j (-1)^j (x/2)^{2j+v} / (j! Gamma(j+v+1)), v > -1.
double series(double v, double x) {
    const double half = 0.5 * x;
    double term = std::pow(half, v) / std::tgamma(v + 1.0);
    double sum = term;
    for (int j = 1; j < 500; ++j) {
        term *= -half * half / (static_cast<double>(j) * (static_cast<double>(j) + v));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

/// J_{n+1/2}(x) for n >= 0.
double half_integer_positive(int n, double x) {
    const double c = std::sqrt(2.0 / (std::numbers::pi * x));
    const double s = std::sin(x), co = std::cos(x);
    double prev = c * co;  // J_{-1/2}
    double cur = c * s;    // J_{1/2}
    if (n == 0) return cur;
    const double v0 = static_cast<double>(n) + 0.5;
    if (x < v0) {
        // below the order the upward recurrence is unstable; the series has
        // no cancellation while x^2 < 4(v + 1)
        if (x * x < 4.0 * (v0 + 1.0)) return series(v0, x);
        return std::cyl_bessel_j(v0, x);
    }
    // J_{v+1} = (2v/x) J_v - J_{v-1}; stable upward while v < x
    for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(i) + 0.5;
        const double next = 2.0 * v / x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// J_{-(n+1/2)}(x) for n >= 0. The downward recurrence into negative
/// half-integer orders follows the dominant (Y-like) solution, so it is stable.
double half_integer_negative(int n, double x) {
    const double c = std::sqrt(2.0 / (std::numbers::pi * x));
    double upper = c * std::sin(x);  // J_{1/2}
    double cur = c * std::cos(x);    // J_{-1/2}
    // J_{v-1} = (2v/x) J_v - J_{v+1}
    for (int i = 0; i < n; ++i) {
        const double v = -0.5 - static_cast<double>(i);
        const double next = 2.0 * v / x * cur - upper;
        upper = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

double bessel_j(double order, double x) {
    if (!(x > 0.0)) throw InvalidArgument("special_functions", "bessel_j", "x must be > 0");
    const double twice = 2.0 * order;
    const double rounded = std::round(twice);
    if (!std::isfinite(order) || std::abs(twice - rounded) > kOrderTol) throw UnsupportedOrder(order);
    const auto twice_int = static_cast<long long>(rounded);
    if (twice_int % 2 == 0) {
        const long long n = twice_int / 2;
        const double v = std::cyl_bessel_j(static_cast<double>(std::llabs(n)), x);
        return (n < 0 && (std::llabs(n) % 2 == 1)) ? -v : v;
    }
    if (twice_int > 0) return half_integer_positive(static_cast<int>((twice_int - 1) / 2), x);
    return half_integer_negative(static_cast<int>((-twice_int - 1) / 2), x);
}

double bessel_j_asymptotic(double order, double x) {
    return std::sqrt(2.0 / (std::numbers::pi * x)) *
           std::cos(x - std::numbers::pi * order / 2.0 - std::numbers::pi / 4.0);
}

}  // namespace voronoi3
