#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ctls {

using Cell = std::variant<long long, double, std::string>;

/// Column-ordered record table emitted by the command-line tool.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Reals as 9-significant-digit scientific ("%.8e"), integers verbatim.
std::string format_cell(const Cell& cell);

/// One table: header plus rows, LF-terminated. Several tables: each is
/// preceded by a "# name" line and separated by a blank line.
void write_csv(std::ostream& out, const std::vector<Table>& tables);

/// One table: array of records. Several tables: object keyed by table name.
void write_json(std::ostream& out, const std::vector<Table>& tables);

}  // namespace ctls
