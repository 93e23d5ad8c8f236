#include "voronoi3/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "voronoi3/errors.hpp"

namespace voronoi3 {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    struct V {
        std::string operator()(Blank) const { return {}; }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return csv_escape(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
    };
    return std::visit(V{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    struct V {
        nlohmann::ordered_json operator()(Blank) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) return format_double(v);
            return v;
        }
        nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
    };
    return std::visit(V{}, c);
}

}  // namespace

void ReportTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw InvalidArgument("report", "add_row",
                              "row has " + std::to_string(row.size()) + " cells, header has " +
                                  std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
}

void ReportTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

void ReportTable::write_json(std::ostream& out) const {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = cell_json(row[i]);
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

std::string ReportTable::csv() const {
    std::ostringstream s;
    write_csv(s);
    return s.str();
}

void ReportTable::save(const std::filesystem::path& path) const {
    std::ofstream csv_out(path, std::ios::binary);
    if (!csv_out) throw InvalidArgument("report", "save", "cannot write " + path.string());
    write_csv(csv_out);
    auto json_path = path;
    json_path.replace_extension(".json");
    if (json_path == path) json_path += ".json";
    std::ofstream json_out(json_path, std::ios::binary);
    if (!json_out) throw InvalidArgument("report", "save", "cannot write " + json_path.string());
    write_json(json_out);
}

std::filesystem::path sidecar_path(const std::filesystem::path& out) {
    auto p = out;
    p += ".config.json";
    return p;
}

}  // namespace voronoi3
