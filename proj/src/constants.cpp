#include "voronoi3/constants.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "voronoi3/errors.hpp"

#ifndef VORONOI3_DEFAULT_CONSTANTS
#define VORONOI3_DEFAULT_CONSTANTS "data/constants.json"
#endif

namespace voronoi3 {

using nlohmann::json;

ConstantsFile ConstantsFile::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cli", "constants", "cannot open constants file " + path.string());
    ConstantsFile out;
    try {
        const json j = json::parse(in);
        out.omega_c = j.at("omega_c").get<double>();
        for (const auto& e : j.at("entries")) {
            CalibratedConstants c;
            c.source = e.at("source").get<std::string>();
            c.vartheta = e.at("vartheta").get<double>();
            c.epsilon = e.at("epsilon").get<double>();
            c.voronoi_c1 = e.value("voronoi_c1", 1.0);
            c.voronoi_c2 = e.value("voronoi_c2", 1.0);
            c.moment_c = e.value("moment_c", 1.0);
            c.main_moment_c = e.value("main_moment_c", 1.0);
            c.pointwise_c = e.value("pointwise_c", 1.0);
            out.entries.push_back(c);
        }
    } catch (const json::exception& e) {
        throw InvalidArgument("cli", "constants", "malformed constants file " + path.string() + ": " + e.what());
    }
    return out;
}

void ConstantsFile::save(const std::filesystem::path& path) const {
    json j;
    j["omega_c"] = omega_c;
    j["entries"] = json::array();
    for (const auto& c : entries) {
        j["entries"].push_back({{"source", c.source},
                                {"vartheta", c.vartheta},
                                {"epsilon", c.epsilon},
                                {"voronoi_c1", c.voronoi_c1},
                                {"voronoi_c2", c.voronoi_c2},
                                {"moment_c", c.moment_c},
                                {"main_moment_c", c.main_moment_c},
                                {"pointwise_c", c.pointwise_c}});
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cli", "constants", "cannot write constants file " + path.string());
    out << j.dump(2) << '\n';
}

std::optional<CalibratedConstants> ConstantsFile::lookup(SourceTag source, const ThetaBound& theta) const {
    const std::string tag = to_string(source);
    for (const auto& c : entries)
        if (c.source == tag && std::abs(c.vartheta - theta.vartheta) < 1e-9 && std::abs(c.epsilon - theta.epsilon) < 1e-9)
            return c;
    return std::nullopt;
}

void ConstantsFile::upsert(const CalibratedConstants& c) {
    for (auto& e : entries) {
        if (e.source == c.source && std::abs(e.vartheta - c.vartheta) < 1e-9 && std::abs(e.epsilon - c.epsilon) < 1e-9) {
            e = c;
            return;
        }
    }
    entries.push_back(c);
}

std::filesystem::path resolve_constants_path(const std::string& explicit_path) {
    if (!explicit_path.empty()) return explicit_path;
    if (const char* env = std::getenv("VORONOI3_CONSTANTS"); env && *env) return env;
    return VORONOI3_DEFAULT_CONSTANTS;
}

}  // namespace voronoi3
