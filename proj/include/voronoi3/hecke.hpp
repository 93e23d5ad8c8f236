#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace voronoi3 {

using cplx = std::complex<double>;

/// Satake parameters of an unramified GL(3) form at the prime p.
struct SatakeSeed {
    std::int64_t p = 2;
    cplx alpha{1.0, 0.0};
    cplx beta{1.0, 0.0};
    cplx gamma{1.0, 0.0};
};

/// Throws InvalidArgument unless alpha*beta*gamma == 1 (and, for self-dual
/// sources, the multiset is closed under inversion) within 1e-9.
void validate_seed(const SatakeSeed& seed, bool self_dual);

/// A(p^a, p^b) = s_{(a+b, b, 0)}(alpha, beta, gamma).
///
/// Evaluated as a ratio of 3x3 alternants; when the Vandermonde denominator
/// is smaller than 1e-8 in magnitude (repeated Satake values, e.g. the
/// all-ones seed of d3) the monomial sum over semistandard tableaux is used.
cplx schur_coefficient(int a, int b, const SatakeSeed& seed);

/// The two evaluation routes, exposed for cross-checking.
cplx schur_bialternant(int a, int b, cplx x1, cplx x2, cplx x3);
cplx schur_tableaux(int a, int b, cplx x1, cplx x2, cplx x3);

enum class SourceTag { d3, sym2_gl2, file, synthetic };

std::string to_string(SourceTag tag);

/// Spectral parameters (nu1, nu2) and the derived archimedean triple.
struct SpectralParams {
    cplx nu1{1.0 / 3.0, 0.0};
    cplx nu2{1.0 / 3.0, 0.0};

    cplx alpha() const { return -nu1 - 2.0 * nu2 + 1.0; }
    cplx beta() const { return -nu1 + nu2; }
    cplx gamma() const { return -(alpha() + beta()); }  // = 2 nu1 + nu2 - 1

    /// 10 + max(1, |alpha|, |beta|, |gamma|), the default shift in (s + Lambda)^{-k}.
    double default_lambda() const;
};

/// Exponent towards Ramanujan-Petersson, A(m1,m2) << (m1 m2)^{vartheta+epsilon}.
struct ThetaBound {
    double vartheta = 5.0 / 14.0;
    double epsilon = 0.05;

    void validate() const;
};

/// Immutable table of A(m1, m2) covering every pair with m1^2 m2 <= limit or
/// m1 m2^2 <= limit. Rows are stored densely: row m1 holds m2 = 1..R(m1).
class CoefficientTable {
public:
    using Generator = std::function<cplx(std::int64_t, std::int64_t)>;

    /// Fills every covered pair from `fn`. Used for synthetic tables.
    static CoefficientTable tabulate(std::int64_t limit, SourceTag tag, const Generator& fn);

    std::int64_t limit() const { return limit_; }
    SourceTag source() const { return tag_; }

    /// Non-cuspidal sources (d3) and synthetic tables are excluded from
    /// cuspidal-only audits.
    bool is_cuspidal() const { return tag_ == SourceTag::sym2_gl2 || tag_ == SourceTag::file; }
    bool is_real(double tol = 1e-12) const;

    bool covers(std::int64_t m1, std::int64_t m2) const;

    /// Throws LimitExceeded for an uncovered pair.
    cplx operator()(std::int64_t m1, std::int64_t m2) const;

    /// Largest m2 stored in row m1 (0 when the row is absent).
    std::int64_t row_length(std::int64_t m1) const;

    std::size_t size() const;

    CoefficientTable scaled(double factor) const;

    /// Visits covered pairs in (m1 ascending, m2 ascending) order.
    void for_each(const std::function<void(std::int64_t, std::int64_t, cplx)>& fn) const;

private:
    CoefficientTable(std::int64_t limit, SourceTag tag);

    std::int64_t limit_ = 0;
    SourceTag tag_ = SourceTag::synthetic;
    std::vector<std::vector<cplx>> rows_;
};

/// Coefficient sources accepted by build_table.
struct D3Source {};
struct Sym2Source {
    std::map<std::int64_t, double> lambda;  ///< normalized GL(2) Hecke eigenvalue per prime
};
struct SatakeSource {
    std::map<std::int64_t, SatakeSeed> seeds;
};
using SeedSource = std::variant<D3Source, Sym2Source, SatakeSource>;

/// Sym^2 Satake triple {b^2, 1, b^-2} with lambda = b + 1/b.
SatakeSeed sym2_seed(std::int64_t p, double lambda);

/// Assembles the table from prime-power Schur values and multiplicativity.
/// Throws MissingPrimeSeed when some prime p <= limit has no seed.
CoefficientTable build_table(const SeedSource& source, std::int64_t limit, SourceTag tag);

CoefficientTable build_d3_table(std::int64_t limit);

/// Sym^2 lift of the discriminant form Delta, lambda(p) = tau(p) / p^{11/2}.
CoefficientTable build_sym2_delta_table(std::int64_t limit);

/// Parses a JSON seed file. Throws MalformedSeedFile(line).
SeedSource load_seed_file(const std::filesystem::path& path);
SeedSource parse_seed_text(const std::string& text);

CoefficientTable build_table_from_file(const std::filesystem::path& path, std::int64_t limit);

/// tau(0..n_max) from the exact q-expansion of q prod_{n}(1 - q^n)^24.
/// tau[0] = 0. Results are memoized for the process.
const std::vector<mpz_class>& ramanujan_tau(std::int64_t n_max);

struct RankinSelbergRow {
    double x = 0;
    double sum = 0;
    double ratio = 0;
};

/// Sum_{d^2 m <= x} |A(d, m)|^2 per grid point. Throws LimitExceeded when
/// x > table.limit().
std::vector<RankinSelbergRow> rankin_selberg_report(const CoefficientTable& table,
                                                    const std::vector<double>& x_grid);

/// Table audits.
struct MultiplicativityAudit {
    std::size_t pairs_checked = 0;
    double max_scaled_deviation = 0;  ///< max |A(mm',nn') - A(m,n)A(m',n')| / (1 + |A(m,n)A(m',n')|)
    bool ok = true;
};
MultiplicativityAudit audit_multiplicativity(const CoefficientTable& table, std::size_t pairs,
                                             std::uint64_t seed, double tol = 1e-9);

/// max |A(m1,m2) - conj A(m2,m1)| over covered pairs.
double duality_defect(const CoefficientTable& table);

/// Smallest C with |A(m1,m2)| <= C (m1 m2)^{vartheta+epsilon} over the table.
double hecke_bound_constant(const CoefficientTable& table, const ThetaBound& theta);

}  // namespace voronoi3
