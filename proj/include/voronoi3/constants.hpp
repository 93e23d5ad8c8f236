#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "voronoi3/hecke.hpp"

namespace voronoi3 {

/// Implied constants fitted once per (source, vartheta, epsilon) and frozen.
struct CalibratedConstants {
    std::string source = "sym2_gl2";
    double vartheta = 5.0 / 14.0;
    double epsilon = 0.05;
    double voronoi_c1 = 1;
    double voronoi_c2 = 1;
    double moment_c = 1;
    double main_moment_c = 1;
    double pointwise_c = 1;
};

class ConstantsFile {
public:
    static ConstantsFile load(const std::filesystem::path& path);
    void save(const std::filesystem::path& path) const;

    /// Entry matching (source, vartheta, epsilon) to 1e-9, if any.
    std::optional<CalibratedConstants> lookup(SourceTag source, const ThetaBound& theta) const;
    void upsert(const CalibratedConstants& c);

    /// Constant C of the Omega residual budget.
    double omega_c = 50;
    std::vector<CalibratedConstants> entries;
};

/// Explicit path, else $VORONOI3_CONSTANTS, else the checked-in default.
std::filesystem::path resolve_constants_path(const std::string& explicit_path = {});

}  // namespace voronoi3
