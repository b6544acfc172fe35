#pragma once

#include <charconv>
#include <string>

namespace eff {

/// Shortest round-trip decimal representation; byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    const std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// RFC-4180 style quoting for CSV cells.
inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace eff
