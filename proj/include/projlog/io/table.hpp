#pragma once

// Flat result tables written as CSV or JSON. Doubles use %.17g; non-finite
// values are written as the strings inf, -inf and nan in both formats.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "projlog/errors.hpp"

namespace projlog::io {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table
{
    std::string schema; // e.g. "projlog.potential.v1"
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row)
    {
        if (row.size() != columns.size())
            throw construction_error("Table: row width does not match the header");
        rows.push_back(std::move(row));
    }
};

inline std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail {

inline std::string csv_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_double(v);
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else {
                if (v.find_first_of(",\"\n") == std::string::npos)
                    return v;
                std::string q = "\"";
                for (char ch : v)
                    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                return q + "\"";
            }
        },
        c);
}

inline nlohmann::ordered_json json_cell(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return format_double(v);
                return v;
            } else {
                return v;
            }
        },
        c);
}

} // namespace detail

inline void write_csv(const Table& t, std::ostream& out)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << detail::csv_cell(row[i]);
        out << "\n";
    }
}

inline void write_json(const Table& t, std::ostream& out)
{
    // ordered_json keeps the documented column order
    nlohmann::ordered_json doc;
    doc["schema"] = t.schema;
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            r[t.columns[i]] = detail::json_cell(row[i]);
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

} // namespace projlog::io
