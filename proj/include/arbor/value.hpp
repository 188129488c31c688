#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace arbor {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/*
 * Real-valued weights (alpha, beta, subtree heights) are doubles. Minus
 * infinity marks an absent weight: it absorbs any finite addend, and is
 * treated as absorbing even against +inf so no NaN can leak out.
 */
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

inline bool is_neg_inf(double x) { return x == kNegInf; }

inline double sat_add(double a, double b) {
    if (a == kNegInf || b == kNegInf) {
        return kNegInf;
    }
    return a + b;
}

}
