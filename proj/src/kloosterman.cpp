#include "voronoi3/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "voronoi3/arith.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/summation.hpp"

namespace voronoi3 {

namespace {

void require_modulus(std::int64_t k, const char* op) {
    if (k < 1) throw InvalidArgument("kloosterman", op, "k must satisfy k >= 1 (got " + std::to_string(k) + ")");
}

/// e(j/k) from the reduced residue j in [0, k).
std::complex<double> unit_phase(std::int64_t j, std::int64_t k) {
    // fold to (-k/2, k/2] so the angle stays small
    if (2 * j > k) j -= k;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
    return {std::cos(angle), std::sin(angle)};
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t k) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % k);
}

}  // namespace

std::int64_t mod_inverse(std::int64_t a, std::int64_t k) {
    require_modulus(k, "mod_inverse");
    if (k == 1) return 0;
    std::int64_t r0 = k, r1 = mod(a, k);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw NotInvertible(a, k);
    return mod(s0, k);
}

ReducedFraction ReducedFraction::make(std::int64_t h, std::int64_t k) {
    if (k < 1)
        throw InvalidArgument("kloosterman", "ReducedFraction",
                              "k must satisfy k >= 1 (got " + std::to_string(k) + ")");
    if (gcd(h, k) != 1)
        throw InvalidArgument("kloosterman", "ReducedFraction",
                              "h/k must be reduced: gcd(" + std::to_string(h) + ", " + std::to_string(k) + ") != 1");
    return ReducedFraction{h, k, mod_inverse(h, k)};
}

std::complex<double> kloosterman_direct(std::int64_t h, std::int64_t m, std::int64_t k) {
    require_modulus(k, "kloosterman_direct");
    if (k == 1) return {1.0, 0.0};
    const std::int64_t hr = mod(h, k), mr = mod(m, k);
    CompensatedSum<std::complex<double>> sum;
    for (std::int64_t x = 1; x < k; ++x) {
        if (gcd(x, k) != 1) continue;
        const std::int64_t xbar = mod_inverse(x, k);
        const std::int64_t j = (mulmod(hr, x, k) + mulmod(mr, xbar, k)) % k;
        sum.add(unit_phase(j, k));
    }
    return sum.value();
}

std::complex<double> kloosterman_crt(std::int64_t h, std::int64_t m, std::int64_t k) {
    require_modulus(k, "kloosterman_crt");
    if (k == 1) return {1.0, 0.0};
    const auto factors = factorize(k);
    if (factors.size() == 1) return kloosterman_direct(h, m, k);

    // S(h, m; q r) = S(h, m rbar^2; q) S(h, m qbar^2; r) for coprime q, r
    std::int64_t q = 1;
    for (int e = 0; e < factors.front().second; ++e) q *= factors.front().first;
    const std::int64_t r = k / q;
    const std::int64_t rbar = mod_inverse(r, q);
    const std::int64_t qbar = mod_inverse(q, r);
    const std::int64_t m_q = mulmod(mod(m, q), mulmod(rbar, rbar, q), q);
    const std::int64_t m_r = mulmod(mod(m, r), mulmod(qbar, qbar, r), r);
    return kloosterman_direct(h, m_q, q) * kloosterman_crt(h, m_r, r);
}

KloostermanMethod parse_kloosterman_method(const std::string& name) {
    if (name == "direct") return KloostermanMethod::direct;
    if (name == "crt") return KloostermanMethod::crt;
    throw InvalidArgument("kloosterman", "weil_check", "method must be 'direct' or 'crt' (got '" + name + "')");
}

WeilCheck weil_check(std::int64_t h, std::int64_t m, std::int64_t k, KloostermanMethod method) {
    require_modulus(k, "weil_check");
    WeilCheck out;
    out.value = method == KloostermanMethod::direct ? kloosterman_direct(h, m, k) : kloosterman_crt(h, m, k);
    const auto g = gcd(gcd(h, m), k);
    out.bound = static_cast<double>(divisor_count(k)) * std::sqrt(static_cast<double>(g)) *
                std::sqrt(static_cast<double>(k));
    out.ok = std::abs(out.value) <= out.bound + 1e-9;
    return out;
}

}  // namespace voronoi3
