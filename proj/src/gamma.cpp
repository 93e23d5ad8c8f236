#include "voronoi3/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "voronoi3/errors.hpp"

namespace voronoi3 {

namespace {

using cplx = std::complex<double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

cplx log_gamma_right(cplx s) {
    const cplx z = s - 1.0;
    cplx acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

cplx log_sin_pi(cplx z) {
    const double pi = std::numbers::pi;
    const double y = z.imag();
    if (std::abs(y) < 20.0) return std::log(std::sin(pi * z));
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i); |e^{2 i pi z}| = e^{-2 pi y}
    if (y > 0) {
        const cplx w = std::exp(cplx{0.0, 2.0 * pi} * z);
        return cplx{0.0, -pi} * z + std::log((w - 1.0) / cplx{0.0, 2.0});
    }
    return std::conj(log_sin_pi(std::conj(z)));
}

cplx log_gamma(cplx s) {
    const double nearest = std::round(s.real());
    if (nearest <= 0.0 && std::abs(s - cplx{nearest, 0.0}) < 1e-12) {
        std::ostringstream os;
        os << "Gamma has a pole at s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i";
        throw PoleAt(os.str());
    }
    if (s.real() >= 0.5) return log_gamma_right(s);
    // Gamma(s) Gamma(1 - s) = pi / sin(pi s)
    return std::log(std::numbers::pi) - log_sin_pi(s) - log_gamma_right(1.0 - s);
}

cplx complex_gamma(cplx s) { return std::exp(log_gamma(s)); }

}  // namespace voronoi3
