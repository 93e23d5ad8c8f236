#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace voronoi3 {

/// A twist h/k in lowest terms together with h_bar, the inverse of h mod k.
struct ReducedFraction {
    std::int64_t h = 1;
    std::int64_t k = 1;
    std::int64_t h_bar = 0;

    /// Throws InvalidArgument when k < 1 or gcd(h, k) != 1.
    static ReducedFraction make(std::int64_t h, std::int64_t k);

    ReducedFraction negated() const { return make(-h, k); }
};

/// x in [0, k) with a*x = 1 (mod k); 0 for k = 1. Throws NotInvertible.
std::int64_t mod_inverse(std::int64_t a, std::int64_t k);

/// S(h, m; k) = sum over units x mod k of e((h x + m x^{-1}) / k).
std::complex<double> kloosterman_direct(std::int64_t h, std::int64_t m, std::int64_t k);

/// Same sum through twisted multiplicativity over the prime-power
/// factorization of k; prime-power pieces are summed directly.
std::complex<double> kloosterman_crt(std::int64_t h, std::int64_t m, std::int64_t k);

enum class KloostermanMethod { direct, crt };

KloostermanMethod parse_kloosterman_method(const std::string& name);

struct WeilCheck {
    std::complex<double> value;
    double bound = 0;  ///< d(k) gcd(h, m, k)^{1/2} k^{1/2}
    bool ok = false;
};

WeilCheck weil_check(std::int64_t h, std::int64_t m, std::int64_t k,
                     KloostermanMethod method = KloostermanMethod::crt);

}  // namespace voronoi3
