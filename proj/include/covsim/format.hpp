#pragma once

#include "covsim/types.hpp"

#include <cstdio>
#include <string>

namespace covsim {

/// Shortest-faithful text for a real with the given significant digits
/// (printf %g semantics, C locale assumed).
inline std::string format_real(Scalar value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
    return buf;
}

}  // namespace covsim
