#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "voronoi3/arith.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/hecke.hpp"

using namespace voronoi3;

namespace {

SatakeSeed ones() { return SatakeSeed{2, 1.0, 1.0, 1.0}; }

SatakeSeed random_seed(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(-3.0, 3.0), rad(0.6, 1.6);
    const cplx a = std::polar(rad(rng), ang(rng)), b = std::polar(rad(rng), ang(rng));
    return SatakeSeed{2, a, b, 1.0 / (a * b)};
}

}  // namespace

TEST_SUITE("hecke_coefficients") {
    TEST_CASE("Schur values at the all-ones seed") {
        CHECK(schur_coefficient(1, 0, ones()) == cplx(3.0));
        CHECK(schur_coefficient(2, 0, ones()) == cplx(6.0));
        CHECK(schur_coefficient(1, 1, ones()) == cplx(8.0));
        CHECK(schur_coefficient(0, 0, ones()) == cplx(1.0));
    }

    TEST_CASE("bialternant agrees with the semistandard-filling oracle") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            const auto s = random_seed(rng);
            for (int a = 0; a <= 4; ++a)
                for (int b = 0; b <= 4; ++b) {
                    const cplx want = oracle::schur_by_fillings(a, b, s.alpha, s.beta, s.gamma);
                    const cplx got = schur_coefficient(a, b, s);
                    CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
                    CHECK(std::abs(schur_tableaux(a, b, s.alpha, s.beta, s.gamma) - want) <= 1e-12 * (1.0 + std::abs(want)));
                }
        }
        // near-degenerate triple goes through the fallback
        const SatakeSeed close{2, cplx(1.0 + 1e-9, 0), 1.0, 1.0 / (1.0 + 1e-9)};
        CHECK(std::abs(schur_coefficient(3, 2, close) - oracle::schur_by_fillings(3, 2, close.alpha, close.beta, close.gamma)) < 1e-9);
    }

    TEST_CASE("d3 table matches ordered factorization counts") {
        const auto t = build_d3_table(2000);
        const auto d3 = oracle::d3_counts(2000);
        CHECK(t(12, 1) == cplx(18.0));
        for (std::int64_t m = 1; m <= 2000; ++m) CHECK(t(m, 1) == cplx(static_cast<double>(d3[static_cast<std::size_t>(m)])));
        CHECK(t.source() == SourceTag::d3);
        CHECK_FALSE(t.is_cuspidal());
    }

    TEST_CASE("limit 1 holds only A(1,1)") {
        const auto t = build_d3_table(1);
        CHECK(t.size() == 1);
        CHECK(t(1, 1) == cplx(1.0));
        CHECK_FALSE(t.covers(2, 1));
        CHECK_THROWS_AS(t(2, 1), LimitExceeded);
    }

    TEST_CASE("coverage includes both index shapes") {
        const auto t = build_d3_table(100);
        CHECK(t.covers(5, 4));    // 25*4 = 100
        CHECK(t.covers(4, 6));    // 4*36 = 144 > 100 but 16*6 = 96
        CHECK(t.covers(1, 10));   // 1*100
        CHECK(t.covers(11, 1));      // 11*1 <= 100
        CHECK_FALSE(t.covers(6, 6));
    }

    TEST_CASE("tau from the sparse product equals the naive product") {
        const auto& tau = ramanujan_tau(40);
        const auto naive = oracle::tau_naive(40);
        CHECK(tau[0] == 0);
        CHECK(tau[1] == 1);
        CHECK(tau[2] == -24);
        CHECK(tau[3] == 252);
        for (int n = 1; n <= 40; ++n) CHECK(tau[static_cast<std::size_t>(n)].get_d() == static_cast<double>(naive[static_cast<std::size_t>(n)]));
    }

    TEST_CASE("Sym2 seed gives A(2,1) = lambda(2)^2 - 1 = -23/32") {
        const auto t = build_sym2_delta_table(64);
        CHECK(std::abs(t(2, 1) - cplx(-23.0 / 32.0)) < 1e-12);
        const double lam = -24.0 / std::pow(2.0, 5.5);
        const auto s = sym2_seed(2, lam);
        CHECK(std::abs(s.alpha * s.beta * s.gamma - 1.0) < 1e-12);
        CHECK(std::abs(s.alpha + s.beta + s.gamma - (lam * lam - 1.0)) < 1e-12);
    }

    TEST_CASE("multiplicativity, duality and the Hecke bound on the Sym2 table") {
        const auto t = build_sym2_delta_table(10000);
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<std::int64_t> pick(1, 100);
        int checked = 0;
        while (checked < 500) {
            const std::int64_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
            if (gcd(a * b, c * d) != 1) continue;
            if (!t.covers(a * c, b * d)) continue;
            const cplx prod = t(a, b) * t(c, d);
            CHECK(std::abs(t(a * c, b * d) - prod) <= 1e-9 * (1.0 + std::abs(prod)));
            ++checked;
        }
        const auto audit = audit_multiplicativity(t, 500, 42);
        CHECK(audit.ok);
        CHECK(audit.pairs_checked == 500);
        CHECK(duality_defect(t) <= 1e-9);
        CHECK(duality_defect(build_d3_table(1000)) <= 1e-9);
        CHECK(hecke_bound_constant(t, ThetaBound{}) <= 10.0);
        CHECK(t.is_real(1e-9));
    }

    TEST_CASE("Rankin-Selberg report") {
        const auto d3 = build_d3_table(100);
        auto r = rankin_selberg_report(d3, {1.0, 100.0});
        CHECK(r[0].sum == 1.0);
        CHECK(r[0].ratio == 1.0);
        double want = 0;
        for (std::int64_t d = 1; d * d <= 100; ++d)
            for (std::int64_t m = 1; d * d * m <= 100; ++m) want += std::norm(d3(d, m));
        CHECK(r[1].sum == doctest::Approx(want).epsilon(1e-14));
        CHECK(r[1].ratio == doctest::Approx(want / 100.0).epsilon(1e-14));
        const auto sym = build_sym2_delta_table(10000);
        for (const auto& row : rankin_selberg_report(sym, {100.0, 1000.0, 10000.0})) {
            CHECK(row.ratio >= 0.1);
            CHECK(row.ratio <= 10.0);
        }
        CHECK_THROWS_AS(rankin_selberg_report(d3, {101.0}), LimitExceeded);
    }

    TEST_CASE("seed files") {
        const std::string sym2 = R"({"source":"sym2_gl2","lambda":[{"p":2,"value":-0.5303300858899106},{"p":3,"value":0.0}]})";
        auto src = parse_seed_text(sym2);
        const auto t = build_table(src, 4, SourceTag::file);
        CHECK(std::abs(t(2, 1) - cplx(-23.0 / 32.0)) < 1e-9);
        CHECK(std::abs(t(3, 1) - cplx(-1.0)) < 1e-12);
        CHECK_THROWS_AS(build_table(src, 5, SourceTag::file), MissingPrimeSeed);

        const std::string satake = R"({"source":"satake","primes":[
  {"p":2,"alpha":[1,0],"beta":[1,0],"gamma":[1,0]},
  {"p":3,"alpha":[1,0],"beta":[1,0],"gamma":[1,0]}]})";
        const auto t2 = build_table(parse_seed_text(satake), 3, SourceTag::file);
        CHECK(t2(2, 1) == cplx(3.0));

        const std::string unknown = "{\"source\":\"satake\",\n\"primes\":[\n{\"p\":2,\"alpha\":[1,0],\"beta\":[1,0],\"gamma\":[1,0],\"bogus\":1}]}";
        try {
            parse_seed_text(unknown);
            FAIL("expected MalformedSeedFile");
        } catch (const MalformedSeedFile& e) {
            CHECK(e.line == 3);
        }
        CHECK_THROWS_AS(parse_seed_text("{\"source\":"), MalformedSeedFile);
        const std::string bad_product = R"({"source":"satake","primes":[{"p":2,"alpha":[2,0],"beta":[1,0],"gamma":[1,0]}]})";
        CHECK_THROWS(build_table(parse_seed_text(bad_product), 2, SourceTag::file));
    }

    TEST_CASE("parameter types") {
        const SpectralParams sp{cplx(0.2, 1.3), cplx(-0.7, 0.4)};
        CHECK(sp.alpha() + sp.beta() + sp.gamma() == cplx(0.0));
        CHECK(SpectralParams{}.default_lambda() == doctest::Approx(11.0));
        CHECK_THROWS_AS((ThetaBound{1.0, 0.05}.validate()), InvalidArgument);
        CHECK_THROWS_AS((ThetaBound{0.1, 0.0}.validate()), InvalidArgument);
        CHECK_THROWS_AS(validate_seed(SatakeSeed{2, 2.0, 1.0, 1.0}, false), InvalidArgument);
        CHECK_NOTHROW(validate_seed(SatakeSeed{2, 2.0, 1.0, 0.5}, true));
        CHECK_THROWS_AS(validate_seed(SatakeSeed{2, 2.0, 2.0, 0.25}, true), InvalidArgument);
        CHECK_NOTHROW(validate_seed(SatakeSeed{2, 2.0, 2.0, 0.25}, false));
    }

    TEST_CASE("scaling") {
        const auto t = build_d3_table(50).scaled(2.0);
        CHECK(t(12, 1) == cplx(36.0));
    }
}
