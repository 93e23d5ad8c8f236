#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace voronoi3 {

/// A blank cell is written as an empty CSV field and as JSON null.
struct Blank {};
using Cell = std::variant<Blank, double, std::int64_t, std::string, bool>;

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double v);

class ReportTable {
public:
    explicit ReportTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Throws InvalidArgument when the row width does not match the header.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;
    std::string csv() const;

    /// Writes `path` as CSV and `path` with a .json extension as the JSON mirror.
    void save(const std::filesystem::path& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// Path of the sidecar config echo: `<out>.config.json`.
std::filesystem::path sidecar_path(const std::filesystem::path& out);

}  // namespace voronoi3
