#pragma once

#include <charconv>
#include <cstddef>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

namespace hwselj {

/// Shortest decimal string that round-trips to the same double. This is the
/// only float formatting the tools use, so identical inputs always emit
/// byte-identical output.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) return "nan";
    return std::string(buf, res.ptr);
}

inline std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row.push_back(',');
        row += cells[i];
    }
    return row;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    out << csv_row(cells) << '\n';
}

}  // namespace hwselj
