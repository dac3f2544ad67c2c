// csv.hpp - deterministic CSV output: header row, 12 significant digits,
// LF line endings, empty cell for undefined values (NaN).
#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace giantatom {

inline std::string format_csv_number(double v) {
    if (std::isnan(v)) return {};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    for (size_t c = 0; c < columns.size(); ++c) {
        if (c) os << ',';
        os << columns[c];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << format_csv_number(row[c]);
        }
        os << '\n';
    }
}

} // namespace giantatom
