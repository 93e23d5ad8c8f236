#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

namespace voronoi3 {

/// Pairwise (cascade) summation with a fixed split rule, so the rounding
/// pattern depends only on the length of the input and never on threading.
template <class T>
T pairwise_sum(std::span<const T> xs) {
    constexpr std::size_t kBlock = 16;
    if (xs.size() <= kBlock) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& xs) {
    return pairwise_sum(std::span<const T>(xs));
}

/// Neumaier-compensated running sum, for prefix sums that must be
/// maintained incrementally.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        if constexpr (std::is_floating_point_v<T>) {
            add_real(sum_, comp_, x);
        } else {
            auto re = sum_.real(), ce = comp_.real();
            auto im = sum_.imag(), ci = comp_.imag();
            add_real(re, ce, x.real());
            add_real(im, ci, x.imag());
            sum_ = T(re, im);
            comp_ = T(ce, ci);
        }
    }
    T value() const { return sum_ + comp_; }

private:
    template <class R>
    static void add_real(R& sum, R& comp, R x) {
        const R t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    T sum_{};
    T comp_{};
};

}  // namespace voronoi3
