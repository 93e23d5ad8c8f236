#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace voronoi3 {

std::int64_t gcd(std::int64_t a, std::int64_t b);

/// Non-negative residue of a modulo k (k >= 1).
inline std::int64_t mod(std::int64_t a, std::int64_t k) {
    std::int64_t r = a % k;
    return r < 0 ? r + k : r;
}

/// Positive divisors of n in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// Number of positive divisors d(n).
std::int64_t divisor_count(std::int64_t n);

/// Prime factorization as (p, exponent) pairs, p ascending. n >= 1.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_prime(std::int64_t n);

/// Smallest-prime-factor sieve on [0, limit].
class PrimeSieve {
public:
    explicit PrimeSieve(std::int64_t limit);

    std::int64_t limit() const { return static_cast<std::int64_t>(spf_.size()) - 1; }
    std::int64_t smallest_factor(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
    bool is_prime(std::int64_t n) const { return n >= 2 && spf_[static_cast<std::size_t>(n)] == n; }
    const std::vector<std::int64_t>& primes() const { return primes_; }

    std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const;

private:
    std::vector<std::int64_t> spf_;
    std::vector<std::int64_t> primes_;
};

}  // namespace voronoi3
