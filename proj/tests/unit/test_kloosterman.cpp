#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/kloosterman.hpp"

using namespace voronoi3;

TEST_SUITE("kloosterman") {
    TEST_CASE("modular inverse") {
        CHECK(mod_inverse(1, 7) == 1);
        CHECK(mod_inverse(3, 7) == 5);
        CHECK(mod_inverse(5, 1) == 0);
        CHECK(mod_inverse(-3, 7) == 2);
        CHECK_THROWS_AS(mod_inverse(4, 6), NotInvertible);
        for (std::int64_t k = 2; k < 200; ++k)
            for (std::int64_t a = 1; a < k; ++a)
                if (std::gcd(a, k) == 1) CHECK((a * mod_inverse(a, k)) % k == 1);
    }

    TEST_CASE("reduced fractions") {
        const auto f = ReducedFraction::make(3, 7);
        CHECK(f.h_bar == 5);
        CHECK(ReducedFraction::make(5, 1).h_bar == 0);
        CHECK(f.negated().h == -3);
        CHECK(f.negated().h_bar == 2);
        CHECK_THROWS_AS(ReducedFraction::make(2, 4), InvalidArgument);
        try {
            ReducedFraction::make(1, 0);
            FAIL("expected InvalidArgument");
        } catch (const InvalidArgument& e) {
            CHECK(std::string(e.what()).find("k >= 1") != std::string::npos);
        }
    }

    TEST_CASE("documented values") {
        CHECK(std::abs(kloosterman_direct(1, 1, 1) - 1.0) < 1e-15);
        CHECK(std::abs(kloosterman_direct(1, 1, 4) + 2.0) < 1e-14);
        CHECK(std::abs(kloosterman_direct(1, 1, 5) - (2.0 + 2.0 * std::cos(4.0 * M_PI / 5.0))) < 1e-14);
        CHECK(std::abs(kloosterman_crt(7, 3, 1) - 1.0) < 1e-15);
        CHECK(std::abs(kloosterman_crt(1, 1, 20) - kloosterman_direct(1, 1, 20)) < 1e-12);
        CHECK(std::abs(kloosterman_crt(1, 1, 101) - kloosterman_direct(1, 1, 101)) < 1e-12);
    }

    TEST_CASE("both paths agree with the naive oracle") {
        for (std::int64_t k = 1; k <= 60; ++k)
            for (std::int64_t h = -3; h <= 5; ++h)
                for (std::int64_t m = -2; m <= 6; ++m) {
                    const auto want = oracle::kloosterman_naive(h, m, k);
                    CHECK(std::abs(kloosterman_direct(h, m, k) - want) < 1e-10);
                    CHECK(std::abs(kloosterman_crt(h, m, k) - want) < 1e-10);
                }
    }

    TEST_CASE("reality and symmetry") {
        for (std::int64_t k = 1; k <= 300; k += 7)
            for (std::int64_t h = 1; h <= 6; ++h)
                for (std::int64_t m = 1; m <= 6; ++m) {
                    const auto s = kloosterman_crt(h, m, k);
                    CHECK(std::abs(s.imag()) <= 1e-10);
                    CHECK(std::abs(s - kloosterman_crt(m, h, k)) <= 1e-10);
                }
    }

    TEST_CASE("Weil check") {
        auto w = weil_check(1, 1, 4);
        CHECK(w.bound == doctest::Approx(6.0));
        CHECK(w.ok);
        w = weil_check(1, 1, 1);
        CHECK(w.bound == 1.0);
        CHECK(w.ok);
        w = weil_check(1, 1, 5, KloostermanMethod::direct);
        CHECK(w.value.real() == doctest::Approx(0.3819660112501051));
        CHECK(w.bound == doctest::Approx(2.0 * std::sqrt(5.0)));
        CHECK(parse_kloosterman_method("direct") == KloostermanMethod::direct);
        CHECK_THROWS_AS(parse_kloosterman_method("fast"), InvalidArgument);
    }
}
