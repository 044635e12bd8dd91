#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <specgame/error.hpp>

namespace specgame::cli {

namespace {

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string slug(const std::string& command) {
    std::string s = command;
    for (char& c : s) {
        if (c == ' ') c = '-';
    }
    return s;
}

std::ofstream open_file(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::config, "cannot write '" + path.string() + "'");
    return file;
}

}  // namespace

std::string format_cell(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    double v = std::get<double>(cell);
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << quote_csv(table.columns[c]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << quote_csv(format_cell(row[c]));
        out << '\n';
    }
}

nlohmann::json report_json(const Report& report) {
    nlohmann::json j;
    j["command"] = report.command;
    nlohmann::json tables = nlohmann::json::object();
    for (const auto& t : report.tables) {
        nlohmann::json records = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json record = nlohmann::json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                std::visit([&](const auto& v) { record[t.columns[c]] = v; }, row[c]);
            }
            records.push_back(record);
        }
        tables[t.name] = records;
    }
    j["tables"] = tables;
    return j;
}

void emit(const Report& report, const std::string& format, const std::string& dir, std::ostream& out) {
    const bool json = format == "json";
    if (dir.empty()) {
        if (json) {
            out << report_json(report).dump(2) << '\n';
            return;
        }
        for (std::size_t i = 0; i < report.tables.size(); ++i) {
            if (i) out << '\n';
            out << "# " << report.tables[i].name << '\n';
            write_csv(report.tables[i], out);
        }
        return;
    }
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    if (json) {
        auto file = open_file(base / (slug(report.command) + ".json"));
        file << report_json(report).dump(2) << '\n';
        return;
    }
    for (const auto& t : report.tables) {
        auto file = open_file(base / (slug(report.command) + "." + t.name + ".csv"));
        write_csv(t, file);
    }
}

}  // namespace specgame::cli
