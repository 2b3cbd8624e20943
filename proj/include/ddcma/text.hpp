#pragma once

#include <charconv>
#include <string>

namespace ddcma {

// Shortest decimal string that round-trips the exact double value; used for
// log lines and CSV so identical runs produce identical bytes.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

} // namespace ddcma
