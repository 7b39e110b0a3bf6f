#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace sep {

// Numeric output rules shared by every CLI table: 12 significant digits,
// '%g' trimming, '.' as the decimal separator regardless of environment.

inline std::string format_value(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    // the tool never calls setlocale, but guard against a hosting process
    // that switched the C locale to a ',' decimal separator
    for (char& c : buf) {
        if (c == '\0') break;
        if (c == ',') c = '.';
    }
    return buf;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) os << ',';
        os << fields[i];
    }
    os << '\n';
}

} // namespace sep
