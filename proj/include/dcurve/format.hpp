#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dcurve {

/// 17 significant digits, C locale, shortest exponent form. Round-trips every
/// finite double exactly.
std::string fmt_double(double v);

/// One typed output value; keeps CSV and JSON renderings consistent.
struct Cell {
    enum class Kind { text, number, integer, boolean };
    Kind kind = Kind::text;
    std::string text;
    double num = 0.0;
    long long whole = 0;
    bool flag = false;

    static Cell str(std::string s);
    static Cell val(double v);
    static Cell count(long long n);
    static Cell truth(bool b);
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const Cell& c);
std::string to_csv(const Table& t);

std::string json_quote(const std::string& s);
std::string json_value(const Cell& c);

/// Object with the meta entries first, then "rows": one object per table row.
std::string to_json(const Table& t, const std::vector<std::pair<std::string, Cell>>& meta);

}  // namespace dcurve
