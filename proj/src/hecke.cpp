#include "voronoi3/hecke.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "voronoi3/arith.hpp"
#include "voronoi3/errors.hpp"
#include "voronoi3/summation.hpp"

namespace voronoi3 {

namespace {

constexpr double kSeedTol = 1e-9;
constexpr double kVandermondeFloor = 1e-8;

cplx ipow(cplx x, int e) {
    cplx r{1.0, 0.0};
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

InvalidArgument seed_error(const std::string& what) {
    return InvalidArgument("hecke_coefficients", "validate_seed", what);
}

std::int64_t row_length_for(std::int64_t limit, std::int64_t m1) {
    if (m1 < 1 || m1 > limit) return 0;
    const std::int64_t a = limit / (m1 * m1 > 0 ? m1 * m1 : 1);
    const std::int64_t q = limit / m1;
    auto b = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
    while (b * b > q) --b;
    while ((b + 1) * (b + 1) <= q) ++b;
    return std::max(a, b);
}

}  // namespace

void validate_seed(const SatakeSeed& seed, bool self_dual) {
    if (seed.p < 2 || !is_prime(seed.p)) throw seed_error("seed index " + std::to_string(seed.p) + " is not prime");
    const std::array<cplx, 3> x{seed.alpha, seed.beta, seed.gamma};
    for (const cplx& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) == 0.0)
            throw seed_error("non-finite or zero Satake parameter at p=" + std::to_string(seed.p));
    if (std::abs(x[0] * x[1] * x[2] - 1.0) > kSeedTol)
        throw seed_error("alpha*beta*gamma != 1 at p=" + std::to_string(seed.p));
    if (!self_dual) return;
    std::array<int, 3> perm{0, 1, 2};
    do {
        bool match = true;
        for (int i = 0; i < 3; ++i)
            if (std::abs(1.0 / x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]) > kSeedTol)
                match = false;
        if (match) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw seed_error("Satake multiset not closed under inversion at p=" + std::to_string(seed.p));
}

cplx schur_bialternant(int a, int b, cplx x1, cplx x2, cplx x3) {
    const int e1 = a + b + 2, e2 = b + 1;
    // det [x_i^{e_j}] with e = (e1, e2, 0)
    const cplx p11 = ipow(x1, e1), p12 = ipow(x1, e2);
    const cplx p21 = ipow(x2, e1), p22 = ipow(x2, e2);
    const cplx p31 = ipow(x3, e1), p32 = ipow(x3, e2);
    const cplx num = p11 * (p22 - p32) - p12 * (p21 - p31) + (p21 * p32 - p22 * p31);
    const cplx vdm = (x1 - x2) * (x1 - x3) * (x2 - x3);
    return num / vdm;
}

cplx schur_tableaux(int a, int b, cplx x1, cplx x2, cplx x3) {
    // Two-row SSYT of shape (a+b, b) in {1,2,3}: row one holds c11 ones,
    // c12 twos, c13 threes; row two holds c22 twos and c23 threes. Column
    // strictness forces c22 <= c11 and b <= c11 + c12.
    const int top = a + b;
    std::vector<cplx> p1(static_cast<std::size_t>(top) + 1), p2(static_cast<std::size_t>(top + b) + 1),
        p3(static_cast<std::size_t>(top + b) + 1);
    p1[0] = p2[0] = p3[0] = 1.0;
    for (std::size_t i = 1; i < p1.size(); ++i) p1[i] = p1[i - 1] * x1;
    for (std::size_t i = 1; i < p2.size(); ++i) {
        p2[i] = p2[i - 1] * x2;
        p3[i] = p3[i - 1] * x3;
    }
    cplx sum{0.0, 0.0};
    for (int c11 = 0; c11 <= top; ++c11) {
        for (int c12 = 0; c11 + c12 <= top; ++c12) {
            if (b > c11 + c12) continue;
            const int c13 = top - c11 - c12;
            for (int c22 = 0; c22 <= std::min(c11, b); ++c22) {
                const int c23 = b - c22;
                sum += p1[static_cast<std::size_t>(c11)] * p2[static_cast<std::size_t>(c12 + c22)] *
                       p3[static_cast<std::size_t>(c13 + c23)];
            }
        }
    }
    return sum;
}

cplx schur_coefficient(int a, int b, const SatakeSeed& seed) {
    if (a < 0 || b < 0) throw InvalidArgument("hecke_coefficients", "schur_coefficient", "exponents must be >= 0");
    if (a == 0 && b == 0) return {1.0, 0.0};
    const cplx vdm = (seed.alpha - seed.beta) * (seed.alpha - seed.gamma) * (seed.beta - seed.gamma);
    if (std::abs(vdm) < kVandermondeFloor) return schur_tableaux(a, b, seed.alpha, seed.beta, seed.gamma);
    return schur_bialternant(a, b, seed.alpha, seed.beta, seed.gamma);
}

std::string to_string(SourceTag tag) {
    switch (tag) {
        case SourceTag::d3: return "d3";
        case SourceTag::sym2_gl2: return "sym2_gl2";
        case SourceTag::file: return "file";
        case SourceTag::synthetic: return "synthetic";
    }
    return "unknown";
}

double SpectralParams::default_lambda() const {
    return 10.0 + std::max({1.0, std::abs(alpha()), std::abs(beta()), std::abs(gamma())});
}

void ThetaBound::validate() const {
    if (!(vartheta >= 0.0 && vartheta < 1.0))
        throw InvalidArgument("hecke_coefficients", "ThetaBound", "theta must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw InvalidArgument("hecke_coefficients", "ThetaBound", "epsilon must be > 0");
}

// ---------------------------------------------------------------------------
// CoefficientTable

CoefficientTable::CoefficientTable(std::int64_t limit, SourceTag tag) : limit_(limit), tag_(tag) {
    if (limit < 1) throw InvalidArgument("hecke_coefficients", "build_table", "limit must be >= 1");
    rows_.resize(static_cast<std::size_t>(limit) + 1);
    for (std::int64_t m1 = 1; m1 <= limit; ++m1)
        rows_[static_cast<std::size_t>(m1)].resize(static_cast<std::size_t>(row_length_for(limit, m1)));
}

CoefficientTable CoefficientTable::tabulate(std::int64_t limit, SourceTag tag, const Generator& fn) {
    CoefficientTable t(limit, tag);
    for (std::int64_t m1 = 1; m1 <= limit; ++m1) {
        auto& row = t.rows_[static_cast<std::size_t>(m1)];
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = fn(m1, static_cast<std::int64_t>(j) + 1);
    }
    return t;
}

bool CoefficientTable::covers(std::int64_t m1, std::int64_t m2) const {
    return m1 >= 1 && m2 >= 1 && m1 <= limit_ && m2 <= static_cast<std::int64_t>(rows_[static_cast<std::size_t>(m1)].size());
}

cplx CoefficientTable::operator()(std::int64_t m1, std::int64_t m2) const {
    if (!covers(m1, m2))
        throw LimitExceeded("hecke_coefficients", "lookup",
                            "LimitExceeded: A(" + std::to_string(m1) + ", " + std::to_string(m2) +
                                ") outside table limit " + std::to_string(limit_));
    return rows_[static_cast<std::size_t>(m1)][static_cast<std::size_t>(m2 - 1)];
}

std::int64_t CoefficientTable::row_length(std::int64_t m1) const {
    if (m1 < 1 || m1 > limit_) return 0;
    return static_cast<std::int64_t>(rows_[static_cast<std::size_t>(m1)].size());
}

std::size_t CoefficientTable::size() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

bool CoefficientTable::is_real(double tol) const {
    for (const auto& r : rows_)
        for (const cplx& v : r)
            if (std::abs(v.imag()) > tol * (1.0 + std::abs(v.real()))) return false;
    return true;
}

CoefficientTable CoefficientTable::scaled(double factor) const {
    CoefficientTable t = *this;
    for (auto& r : t.rows_)
        for (cplx& v : r) v *= factor;
    return t;
}

void CoefficientTable::for_each(const std::function<void(std::int64_t, std::int64_t, cplx)>& fn) const {
    for (std::int64_t m1 = 1; m1 <= limit_; ++m1) {
        const auto& row = rows_[static_cast<std::size_t>(m1)];
        for (std::size_t j = 0; j < row.size(); ++j) fn(m1, static_cast<std::int64_t>(j) + 1, row[j]);
    }
}

// ---------------------------------------------------------------------------
// Sources

SatakeSeed sym2_seed(std::int64_t p, double lambda) {
    const cplx l{lambda, 0.0};
    cplx b = (l + std::sqrt(l * l - 4.0)) / 2.0;
    const cplx b2 = b * b;
    return SatakeSeed{p, b2, cplx{1.0, 0.0}, 1.0 / b2};
}

CoefficientTable build_table(const SeedSource& source, std::int64_t limit, SourceTag tag) {
    if (limit < 1) throw InvalidArgument("hecke_coefficients", "build_table", "limit must be >= 1");
    const PrimeSieve sieve(limit);

    std::unordered_map<std::int64_t, SatakeSeed> seeds;
    for (std::int64_t p : sieve.primes()) {
        SatakeSeed s;
        if (std::holds_alternative<D3Source>(source)) {
            s = SatakeSeed{p, 1.0, 1.0, 1.0};
        } else if (const auto* sym = std::get_if<Sym2Source>(&source)) {
            auto it = sym->lambda.find(p);
            if (it == sym->lambda.end()) throw MissingPrimeSeed(p);
            s = sym2_seed(p, it->second);
            validate_seed(s, true);
        } else {
            const auto& sat = std::get<SatakeSource>(source);
            auto it = sat.seeds.find(p);
            if (it == sat.seeds.end()) throw MissingPrimeSeed(p);
            s = it->second;
            validate_seed(s, false);
        }
        seeds.emplace(p, s);
    }

    std::unordered_map<std::uint64_t, cplx> prime_power_cache;
    auto local = [&](std::int64_t p, int a, int b) {
        const std::uint64_t key = (static_cast<std::uint64_t>(p) << 16) | (static_cast<std::uint64_t>(a) << 8) |
                                  static_cast<std::uint64_t>(b);
        auto it = prime_power_cache.find(key);
        if (it != prime_power_cache.end()) return it->second;
        const cplx v = schur_coefficient(a, b, seeds.at(p));
        prime_power_cache.emplace(key, v);
        return v;
    };

    return CoefficientTable::tabulate(limit, tag, [&](std::int64_t m1, std::int64_t m2) {
        auto f1 = sieve.factorize(m1);
        auto f2 = sieve.factorize(m2);
        cplx value{1.0, 0.0};
        std::size_t i = 0, j = 0;
        while (i < f1.size() || j < f2.size()) {
            std::int64_t p;
            int a = 0, b = 0;
            if (j >= f2.size() || (i < f1.size() && f1[i].first < f2[j].first)) {
                p = f1[i].first;
                a = f1[i++].second;
            } else if (i >= f1.size() || f2[j].first < f1[i].first) {
                p = f2[j].first;
                b = f2[j++].second;
            } else {
                p = f1[i].first;
                a = f1[i++].second;
                b = f2[j++].second;
            }
            value *= local(p, a, b);
        }
        return value;
    });
}

CoefficientTable build_d3_table(std::int64_t limit) { return build_table(D3Source{}, limit, SourceTag::d3); }

const std::vector<mpz_class>& ramanujan_tau(std::int64_t n_max) {
    static std::mutex mutex;
    static std::vector<mpz_class> cache;
    std::lock_guard lock(mutex);
    if (static_cast<std::int64_t>(cache.size()) > n_max) return cache;

    // prod (1 - q^n)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}
    const auto len = static_cast<std::size_t>(n_max);  // coefficients q^0..q^{n_max-1}
    std::vector<std::pair<std::size_t, long>> cube;
    for (std::size_t j = 0; j * (j + 1) / 2 < len; ++j)
        cube.emplace_back(j * (j + 1) / 2, (j % 2 == 0 ? 1L : -1L) * static_cast<long>(2 * j + 1));

    std::vector<mpz_class> series(len), next(len);
    if (len > 0) series[0] = 1;
    for (int round = 0; round < 8; ++round) {
        for (auto& v : next) v = 0;
        for (std::size_t j = 0; j < len; ++j) {
            if (series[j] == 0) continue;
            for (const auto& [off, coef] : cube) {
                if (off + j >= len) break;
                if (coef > 0)
                    mpz_addmul_ui(next[off + j].get_mpz_t(), series[j].get_mpz_t(), static_cast<unsigned long>(coef));
                else
                    mpz_submul_ui(next[off + j].get_mpz_t(), series[j].get_mpz_t(), static_cast<unsigned long>(-coef));
            }
        }
        std::swap(series, next);
    }

    cache.assign(len + 1, mpz_class(0));
    for (std::size_t n = 1; n <= len; ++n) cache[n] = series[n - 1];
    return cache;
}

CoefficientTable build_sym2_delta_table(std::int64_t limit) {
    const auto& tau = ramanujan_tau(limit);
    Sym2Source src;
    const PrimeSieve sieve(limit);
    for (std::int64_t p : sieve.primes()) {
        const double t = tau[static_cast<std::size_t>(p)].get_d();
        src.lambda[p] = t / std::pow(static_cast<double>(p), 5.5);
    }
    return build_table(src, limit, SourceTag::sym2_gl2);
}

// ---------------------------------------------------------------------------
// Seed files

namespace {

std::size_t line_at(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line of the n-th (0-based) occurrence of `needle`, or of the end of text.
std::size_t line_of(const std::string& text, const std::string& needle, std::size_t n = 0) {
    std::size_t pos = 0;
    for (std::size_t i = 0;; ++i) {
        pos = text.find(needle, pos);
        if (pos == std::string::npos) return line_at(text, text.size());
        if (i == n) return line_at(text, pos);
        pos += needle.size();
    }
}

cplx parse_pair(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw std::invalid_argument("expected [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& text) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw MalformedSeedFile(line_of(text, "\"" + it.key() + "\""), "unknown field '" + it.key() + "'");
}

}  // namespace

SeedSource parse_seed_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedSeedFile(line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
    }
    if (!doc.is_object()) throw MalformedSeedFile(1, "top level must be an object");
    if (!doc.contains("source") || !doc["source"].is_string())
        throw MalformedSeedFile(1, "missing string field 'source'");
    const std::string kind = doc["source"].get<std::string>();

    if (kind == "sym2_gl2") {
        reject_unknown(doc, {"source", "lambda"}, text);
        if (!doc.contains("lambda") || !doc["lambda"].is_array())
            throw MalformedSeedFile(line_of(text, "\"source\""), "missing array 'lambda'");
        Sym2Source src;
        std::size_t idx = 0;
        for (const auto& e : doc["lambda"]) {
            const std::size_t line = line_of(text, "\"p\"", idx++);
            if (!e.is_object()) throw MalformedSeedFile(line, "lambda entries must be objects");
            reject_unknown(e, {"p", "value"}, text);
            if (!e.contains("p") || !e["p"].is_number_integer() || !e.contains("value") || !e["value"].is_number())
                throw MalformedSeedFile(line, "entry needs integer 'p' and numeric 'value'");
            const auto p = e["p"].get<std::int64_t>();
            const double v = e["value"].get<double>();
            if (!is_prime(p)) throw MalformedSeedFile(line, "p=" + std::to_string(p) + " is not prime");
            if (!std::isfinite(v)) throw MalformedSeedFile(line, "non-finite lambda");
            if (!src.lambda.emplace(p, v).second) throw MalformedSeedFile(line, "duplicate prime " + std::to_string(p));
        }
        return src;
    }
    if (kind == "satake") {
        reject_unknown(doc, {"source", "primes"}, text);
        if (!doc.contains("primes") || !doc["primes"].is_array())
            throw MalformedSeedFile(line_of(text, "\"source\""), "missing array 'primes'");
        SatakeSource src;
        std::size_t idx = 0;
        for (const auto& e : doc["primes"]) {
            const std::size_t line = line_of(text, "\"p\"", idx++);
            if (!e.is_object()) throw MalformedSeedFile(line, "prime entries must be objects");
            reject_unknown(e, {"p", "alpha", "beta", "gamma"}, text);
            SatakeSeed s;
            try {
                if (!e.contains("p") || !e["p"].is_number_integer()) throw std::invalid_argument("missing integer 'p'");
                s.p = e["p"].get<std::int64_t>();
                s.alpha = parse_pair(e.at("alpha"));
                s.beta = parse_pair(e.at("beta"));
                s.gamma = parse_pair(e.at("gamma"));
                validate_seed(s, false);
            } catch (const MalformedSeedFile&) {
                throw;
            } catch (const std::exception& ex) {
                throw MalformedSeedFile(line, ex.what());
            }
            if (!src.seeds.emplace(s.p, s).second) throw MalformedSeedFile(line, "duplicate prime " + std::to_string(s.p));
        }
        return src;
    }
    throw MalformedSeedFile(line_of(text, "\"source\""), "unknown source '" + kind + "'");
}

SeedSource load_seed_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("hecke_coefficients", "build_table", "cannot open seed file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_seed_text(ss.str());
}

CoefficientTable build_table_from_file(const std::filesystem::path& path, std::int64_t limit) {
    return build_table(load_seed_file(path), limit, SourceTag::file);
}

// ---------------------------------------------------------------------------
// Reports and audits

std::vector<RankinSelbergRow> rankin_selberg_report(const CoefficientTable& table, const std::vector<double>& x_grid) {
    std::vector<RankinSelbergRow> rows;
    rows.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x >= 1.0))
            throw InvalidArgument("hecke_coefficients", "rankin_selberg_report", "grid values must be >= 1");
        if (x > static_cast<double>(table.limit()))
            throw LimitExceeded("hecke_coefficients", "rankin_selberg_report",
                                "LimitExceeded: x=" + std::to_string(x) + " beyond table limit " +
                                    std::to_string(table.limit()));
        const auto xi = static_cast<std::int64_t>(std::floor(x));
        std::vector<double> terms;
        for (std::int64_t d = 1; d * d <= xi; ++d)
            for (std::int64_t m = 1; d * d * m <= xi; ++m) terms.push_back(std::norm(table(d, m)));
        const double sum = pairwise_sum(terms);
        rows.push_back({x, sum, sum / x});
    }
    return rows;
}

MultiplicativityAudit audit_multiplicativity(const CoefficientTable& table, std::size_t pairs, std::uint64_t seed,
                                             double tol) {
    MultiplicativityAudit audit;
    std::mt19937_64 rng(seed);
    const std::int64_t lim = table.limit();
    if (lim < 6) return audit;  // no coprime pair beyond (1,1) fits
    std::uniform_int_distribution<std::int64_t> first(1, lim);
    std::size_t attempts = 0;
    while (audit.pairs_checked < pairs && attempts < pairs * 10000) {
        ++attempts;
        const std::int64_t m1 = first(rng);
        const std::int64_t r1 = table.row_length(m1);
        if (r1 < 1) continue;
        const std::int64_t m2 = std::uniform_int_distribution<std::int64_t>(1, r1)(rng);
        const std::int64_t n1 = std::uniform_int_distribution<std::int64_t>(1, std::max<std::int64_t>(1, lim / m1))(rng);
        const std::int64_t rn = table.row_length(n1);
        if (rn < 1) continue;
        const std::int64_t n2 = std::uniform_int_distribution<std::int64_t>(1, rn)(rng);
        if (m1 * m2 == 1 && n1 * n2 == 1) continue;
        if (gcd(m1 * m2, n1 * n2) != 1) continue;
        if (!table.covers(m1 * n1, m2 * n2)) continue;
        const cplx prod = table(m1, m2) * table(n1, n2);
        const double dev = std::abs(table(m1 * n1, m2 * n2) - prod) / (1.0 + std::abs(prod));
        audit.max_scaled_deviation = std::max(audit.max_scaled_deviation, dev);
        ++audit.pairs_checked;
    }
    audit.ok = audit.max_scaled_deviation <= tol && audit.pairs_checked == pairs;
    return audit;
}

double duality_defect(const CoefficientTable& table) {
    double worst = 0.0;
    table.for_each([&](std::int64_t m1, std::int64_t m2, cplx v) {
        if (table.covers(m2, m1)) worst = std::max(worst, std::abs(v - std::conj(table(m2, m1))));
    });
    return worst;
}

double hecke_bound_constant(const CoefficientTable& table, const ThetaBound& theta) {
    double c = 0.0;
    const double e = theta.vartheta + theta.epsilon;
    table.for_each([&](std::int64_t m1, std::int64_t m2, cplx v) {
        c = std::max(c, std::abs(v) / std::pow(static_cast<double>(m1) * static_cast<double>(m2), e));
    });
    return c;
}

}  // namespace voronoi3
