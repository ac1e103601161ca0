#pragma once

#include <string>
#include <variant>
#include <vector>

namespace fracplap::report {

// A flat, schema-versioned result table. CSV output carries the
// schema_version as the leading column of every row; JSON mirrors the table
// and adds the metadata block. All numbers are printed with shortest
// round-trip formatting (locale-free), so identical inputs produce
// byte-identical output.

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, long long, std::string>;

struct Report {
    std::string kind;
    std::vector<std::pair<std::string, Cell>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // "pass" / "fail" / "error" / "" (not a verification)
    std::string verdict;

    void add_row(std::vector<Cell> cells);
    std::string to_csv() const;
    std::string to_json() const;
};

std::string format_cell(const Cell& c);

}  // namespace fracplap::report
