#pragma once

#include <cstdio>
#include <string>

namespace levy_scl {

/// Round-trippable decimal text for CSV output.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace levy_scl
