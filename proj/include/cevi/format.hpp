#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace cevi {

/// Shortest decimal text that parses back to the same double.
inline std::string format_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

}  // namespace cevi
