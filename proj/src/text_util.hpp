#pragma once

#include <cstdio>
#include <string>
#include <string_view>

namespace specdim::detail {

// Shortest text that round-trips a double: 17 significant digits.
inline std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

// Drops a trailing `#` comment, then surrounding whitespace.
inline std::string_view strip_comment(std::string_view s) {
    if (const auto pos = s.find('#'); pos != std::string_view::npos) s = s.substr(0, pos);
    return trim(s);
}

}  // namespace specdim::detail
