#include "voronoi3/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace voronoi3 {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::int64_t divisor_count(std::int64_t n) {
    std::int64_t count = 1;
    for (const auto& [p, e] : factorize(n)) count *= e + 1;
    return count;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

PrimeSieve::PrimeSieve(std::int64_t limit) : spf_(static_cast<std::size_t>(std::max<std::int64_t>(limit, 1) + 1), 0) {
    const auto n = static_cast<std::int64_t>(spf_.size()) - 1;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (spf_[static_cast<std::size_t>(i)] != 0) continue;
        primes_.push_back(i);
        for (std::int64_t j = i; j <= n; j += i)
            if (spf_[static_cast<std::size_t>(j)] == 0) spf_[static_cast<std::size_t>(j)] = i;
    }
    spf_[0] = 0;
    spf_[1] = 1;
}

std::vector<std::pair<std::int64_t, int>> PrimeSieve::factorize(std::int64_t n) const {
    std::vector<std::pair<std::int64_t, int>> out;
    while (n > 1) {
        const std::int64_t p = smallest_factor(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    return out;
}

}  // namespace voronoi3
