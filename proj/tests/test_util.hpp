#pragma once

#include <algorithm>
#include <cmath>

// |a - b| / max(|a|, |b|), or 0 when both are zero.
inline double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

inline double abs_diff(double a, double b) { return std::fabs(a - b); }
