#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace voronoi3 {

/// Everything one CLI invocation depends on. Serialized next to every
/// report so the run can be replayed.
struct RunConfig {
    std::string subcommand;
    std::string table = "sym2";  ///< d3 | sym2 | path to a seed file
    std::int64_t limit = 0;      ///< 0 picks the smallest limit the run needs
    double theta = 5.0 / 14.0;
    double epsilon = 0.05;

    std::int64_t h = 1;
    std::int64_t k = 1;
    std::int64_t m = 1;
    std::string method = "crt";

    // grids: "a,b,c", "lin:a:b:n" or "log:a:b:n"
    std::string x = "1000";
    std::string N;             ///< empty: N = n_factor * x
    double n_factor = 1.0;
    std::string X = "100";
    std::string y = "1000";

    double T = 0;              ///< 0: 4 y^{1/3} for omega, 100 for perron
    int n = 3;
    int nu = 0;
    int k_order = 1;
    double delta = 0.01;
    double lambda = 0;         ///< 0: default shift from the spectral parameters
    double max_phase_step = 0.5;
    double abs_tol = 1e-8;

    std::string coeffs = "1";  ///< comma list of c(1), c(2), ... or d3:<len>
    double sigma = 2;

    double c_nk = 1.0 / 20.0;
    bool dyadic = false;
    bool main_term = false;

    std::string out;           ///< empty: CSV to stdout
    std::string constants;     ///< empty: $VORONOI3_CONSTANTS or the built-in default
    std::uint64_t seed = 20240611;
    unsigned threads = 0;      ///< 0: hardware concurrency

    bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Loads a config file; accepts a bare config or a sidecar with a "config" member.
RunConfig load_run_config(const std::string& path);

/// Expands a grid spec into its points.
std::vector<double> parse_grid(const std::string& spec, const std::string& flag);

/// Exit status: 0 all asserted invariants hold, 2 an invariant failed, 1 usage or IO error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int cli_main(int argc, char** argv);

}  // namespace voronoi3
