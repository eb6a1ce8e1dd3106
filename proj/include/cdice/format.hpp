#pragma once

#include <cstdio>
#include <string>

namespace cdice {

/// 17 significant digits: enough to recover the exact double on re-parse.
/// Used for machine-facing output (CSV rows, JSON reports).
inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// 6 significant digits for human-facing text output.
inline std::string format_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace cdice
