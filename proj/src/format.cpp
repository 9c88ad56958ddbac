#include "dcurve/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dcurve {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

Cell Cell::str(std::string s) {
    Cell c;
    c.kind = Kind::text;
    c.text = std::move(s);
    return c;
}

Cell Cell::val(double v) {
    Cell c;
    c.kind = Kind::number;
    c.num = v;
    return c;
}

Cell Cell::count(long long n) {
    Cell c;
    c.kind = Kind::integer;
    c.whole = n;
    return c;
}

Cell Cell::truth(bool b) {
    Cell c;
    c.kind = Kind::boolean;
    c.flag = b;
    return c;
}

std::string csv_field(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::number: return fmt_double(c.num);
        case Cell::Kind::integer: return std::to_string(c.whole);
        case Cell::Kind::boolean: return c.flag ? "true" : "false";
        case Cell::Kind::text: break;
    }
    bool needs_quotes = c.text.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return c.text;
    std::string out = "\"";
    for (char ch : c.text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += csv_field(Cell::str(t.columns[i]));
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += csv_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += char(ch);
                }
        }
    }
    out += '"';
    return out;
}

std::string json_value(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::number:
            // JSON has no nan/inf literals
            return std::isfinite(c.num) ? fmt_double(c.num) : "null";
        case Cell::Kind::integer: return std::to_string(c.whole);
        case Cell::Kind::boolean: return c.flag ? "true" : "false";
        case Cell::Kind::text: return json_quote(c.text);
    }
    return "null";
}

std::string to_json(const Table& t, const std::vector<std::pair<std::string, Cell>>& meta) {
    std::string out = "{\n";
    for (const auto& [key, cell] : meta) {
        out += "  " + json_quote(key) + ": " + json_value(cell) + ",\n";
    }
    out += "  \"rows\": [\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        out += "    {";
        const auto& row = t.rows[r];
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ", ";
            out += json_quote(t.columns[i]) + ": " + json_value(row[i]);
        }
        out += r + 1 < t.rows.size() ? "},\n" : "}\n";
    }
    out += "  ]\n}\n";
    return out;
}

}  // namespace dcurve
