#include "arbor/exact_sum.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <limits>

namespace arbor {

namespace {

// -1 for an absorbing minus infinity, +1 for the plus sentinel, 0 finite
int infinity_class(const ExactSum& x) {
    if (x.a == -std::numeric_limits<double>::infinity() || x.b == -std::numeric_limits<double>::infinity()) {
        return -1;
    }
    if (std::isinf(x.a) || std::isinf(x.b)) {
        return 1;
    }
    return 0;
}

struct Pair {
    double hi, lo;
};

Pair two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// exact sign of a sum of doubles: grow a nonoverlapping expansion, whose
// largest nonzero component carries the sign
template <std::size_t N>
int sign_of_sum(const std::array<double, N>& terms) {
    std::array<double, N> e{};
    std::size_t len = 0;
    for (double t : terms) {
        double q = t;
        std::size_t out = 0;
        for (std::size_t i = 0; i < len; ++i) {
            auto [hi, lo] = two_sum(q, e[i]);
            q = hi;
            if (lo != 0.0) {
                e[out++] = lo;
            }
        }
        if (q != 0.0) {
            e[out++] = q;
        }
        len = out;
    }
    if (len == 0) {
        return 0;
    }
    return e[len - 1] > 0 ? 1 : -1;
}

}

int detail::compare_slow(const ExactSum& x, const ExactSum& y) {
    const int cx = infinity_class(x);
    const int cy = infinity_class(y);
    if (cx != 0 || cy != 0) {
        return cx == cy ? 0 : (cx < cy ? -1 : 1);
    }
    const double kd = static_cast<double>(x.k - y.k);
    return sign_of_sum(std::array<double, 5>{x.a, x.b, -y.a, -y.b, kd});
}

double rounded(const ExactSum& x) {
    const int c = infinity_class(x);
    if (c != 0) {
        return c < 0 ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    // error-free split, then the low parts added with rounding to odd so the
    // final rounding to nearest is correct
    const auto [uh, ul] = two_sum(x.b, static_cast<double>(x.k));
    const auto [th, tl] = two_sum(x.a, uh);
    auto [v, err] = two_sum(tl, ul);
    if (err != 0.0 && (std::bit_cast<std::uint64_t>(v) & 1) == 0) {
        v = std::nextafter(v, err > 0 ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity());
    }
    return th + v;
}

}
