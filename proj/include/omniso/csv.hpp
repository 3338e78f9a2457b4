#pragma once

// Bit-stable table emission: CSV with 17-significant-digit floats (lossless
// double round-trip) and the mirroring JSON array-of-objects form.

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace omniso {

inline std::string fmt17(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

using Field = std::variant<double, int, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Field>> rows;
};

inline void write_csv(std::ostream& out, const Table& t) {
    for (size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            if (const double* d = std::get_if<double>(&row[i]))
                out << fmt17(*d);
            else if (const int* n = std::get_if<int>(&row[i]))
                out << *n;
            else
                out << std::get<std::string>(row[i]);
        }
        out << "\n";
    }
}

}  // namespace omniso
