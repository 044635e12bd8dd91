#pragma once

// Tabular command output, written as CSV or JSON.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace specgame::cli {

using Cell = std::variant<std::string, double, std::int64_t>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct Report {
    std::string command;
    std::vector<Table> tables;

    Table& table(std::string name, std::vector<std::string> columns) {
        tables.push_back({std::move(name), std::move(columns), {}});
        return tables.back();
    }
};

/// Doubles use 10 significant digits.
std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);
nlohmann::json report_json(const Report& report);

/// Without a directory everything goes to `out` (CSV tables separated by
/// "# name" lines). With one, CSV tables go to `<dir>/<command>.<table>.csv`
/// and JSON to `<dir>/<command>.json`.
void emit(const Report& report, const std::string& format, const std::string& dir, std::ostream& out);

}  // namespace specgame::cli
