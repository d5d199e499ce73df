#include "ctls/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace ctls {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("row width does not match columns");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8e", std::get<double>(cell));
    return buf;
}

void write_csv(std::ostream& out, const std::vector<Table>& tables) {
    const bool labelled = tables.size() > 1;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        const Table& table = tables[t];
        if (t > 0) out << '\n';
        if (labelled) out << "# " << table.name << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << table.columns[c];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_cell(row[c]);
            out << '\n';
        }
    }
}

namespace {

nlohmann::ordered_json records(const Table& table) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        // JSON has no inf/nan; emit null.
                        rec[table.columns[c]] = std::isfinite(v) ? nlohmann::ordered_json(v)
                                                                 : nlohmann::ordered_json();
                    } else {
                        rec[table.columns[c]] = v;
                    }
                },
                row[c]);
        }
        arr.push_back(std::move(rec));
    }
    return arr;
}

}  // namespace

void write_json(std::ostream& out, const std::vector<Table>& tables) {
    nlohmann::ordered_json doc;
    if (tables.size() == 1) {
        doc = records(tables.front());
    } else {
        doc = nlohmann::ordered_json::object();
        for (const auto& t : tables) doc[t.name] = records(t);
    }
    out << doc.dump(2) << '\n';
}

}  // namespace ctls
