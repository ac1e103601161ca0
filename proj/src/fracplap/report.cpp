#include "fracplap/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace fracplap::report {

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        double v = std::get<double>(c);
        if (std::isnan(v) || std::isinf(v)) return format_double(v);
        return v;
    }
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    return std::get<std::string>(c);
}

}  // namespace

std::string format_cell(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

void Report::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw std::logic_error("Report: row width does not match the column set");
    rows.push_back(std::move(cells));
}

std::string Report::to_csv() const {
    std::string out = "schema_version";
    for (const auto& c : columns) out += "," + c;
    out += "\n";
    for (const auto& row : rows) {
        out += std::to_string(kSchemaVersion);
        for (const auto& cell : row) out += "," + format_cell(cell);
        out += "\n";
    }
    return out;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) m[k] = cell_json(v);
    j["meta"] = m;
    j["columns"] = columns;
    nlohmann::ordered_json rs = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (size_t i = 0; i < columns.size(); ++i) r[columns[i]] = cell_json(row[i]);
        rs.push_back(r);
    }
    j["rows"] = rs;
    if (!verdict.empty()) j["verdict"] = verdict;
    return j.dump(2) + "\n";
}

}  // namespace fracplap::report
