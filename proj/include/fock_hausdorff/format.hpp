#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace fock_hausdorff {

// Shortest decimal that round-trips ("0.5", "3", "1e-09").
inline std::string shortest(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// 17 significant digits.
inline std::string digits17(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace fock_hausdorff
