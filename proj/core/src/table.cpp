#include "geotherm/io/table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace geotherm::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ',';
        out << t.columns[i];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    return out.str();
}

std::string to_json(const Table& t) {
    std::ostringstream out;
    out << "{\n  \"params\": {";
    bool first = true;
    for (const auto& [key, value] : t.params) {
        if (!first) out << ", ";
        out << '"' << key << "\": " << format_double(value);
        first = false;
    }
    out << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out << ", ";
        out << '"' << t.columns[i] << '"';
    }
    out << "],\n  \"rows\": [\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out << "    [";
        for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
            if (i) out << ", ";
            out << format_double(t.rows[r][i]);
        }
        out << (r + 1 < t.rows.size() ? "],\n" : "]\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
}

}  // namespace geotherm::io
