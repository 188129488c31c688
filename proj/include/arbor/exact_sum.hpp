#pragma once

#include <cmath>
#include <cstdint>

namespace arbor {

/*
 * a + b + k held without rounding. Weighted tree quantities are always one
 * node weight, one offset and an integer distance; keeping the three apart
 * makes every comparison exact and leaves a single rounding at the end, so
 * the result does not depend on the order the terms were combined in.
 *
 * Minus infinity in either real part absorbs everything; otherwise plus
 * infinity is the "nothing here" sentinel of minima.
 */
struct ExactSum {
    double a = 0.0;
    double b = 0.0;
    std::int64_t k = 0;
};

namespace detail {
int compare_slow(const ExactSum& x, const ExactSum& y);
}

// sign of x - y
inline int compare(const ExactSum& x, const ExactSum& y) {
    // rough difference of finite values is off by under 2^-51 of the scale
    const double kd = static_cast<double>(x.k - y.k);
    const double rough = (x.a - y.a) + (x.b - y.b) + kd;
    const double scale = std::abs(x.a) + std::abs(y.a) + std::abs(x.b) + std::abs(y.b) + std::abs(kd);
    if (std::abs(rough) > scale * 0x1p-50 && scale < HUGE_VAL) {
        return rough > 0 ? 1 : -1;
    }
    return detail::compare_slow(x, y);
}

inline bool operator<(const ExactSum& x, const ExactSum& y) { return compare(x, y) < 0; }
inline bool operator>(const ExactSum& x, const ExactSum& y) { return compare(x, y) > 0; }
inline bool operator==(const ExactSum& x, const ExactSum& y) { return compare(x, y) == 0; }

inline const ExactSum& max(const ExactSum& x, const ExactSum& y) { return x < y ? y : x; }
inline const ExactSum& min(const ExactSum& x, const ExactSum& y) { return y < x ? y : x; }

inline ExactSum shifted(ExactSum x, std::int64_t by) {
    x.k += by;
    return x;
}

// first real part of `x`, second of `y`, integers added; the unused parts
// must be zero
inline ExactSum joined(const ExactSum& x, const ExactSum& y) { return {x.a, y.b, x.k + y.k}; }

// a + b + k rounded once to the nearest double (ties to even)
double rounded(const ExactSum& x);

}
