#pragma once

#include <map>
#include <string>
#include <vector>

namespace geotherm::io {

/// Column-oriented table with lossless CSV / JSON serialization: 17
/// significant digits, '.' decimal point, comma separators.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, double> params;

    void add_row(std::initializer_list<double> values) { rows.emplace_back(values); }
};

std::string format_double(double v);
std::string to_csv(const Table& t);
/// One top-level object: {"params": {...}, "columns": [...], "rows": [[...]]}.
std::string to_json(const Table& t);

void write_file(const std::string& path, const std::string& content);

}  // namespace geotherm::io
