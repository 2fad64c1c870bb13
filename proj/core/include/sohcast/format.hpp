#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace sohcast {

/// Shortest round-trip decimal representation of a double.
/// All CSV output goes through this so identical values always
/// serialize to identical bytes ('.' decimal separator, no locale).
inline std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace sohcast
