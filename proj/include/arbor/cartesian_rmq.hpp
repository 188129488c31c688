#pragma once

#include <cstdint>
#include <vector>

#include "arbor/exact_sum.hpp"

namespace arbor {

/*
 * Static range-argmax over a totally ordered sequence: O(n) build, O(1) query.
 *
 * Positions are split into 64-wide blocks. Inside a block, each position keeps
 * a bitmask of the right spine of the Cartesian tree of the block prefix that
 * ends there; the lowest spine position at or after `lo` is the in-block
 * argmax. Whole blocks in between are covered by a sparse table over block
 * maxima.
 */
template <class T>
class BasicCartesianRmq {
public:
    BasicCartesianRmq() = default;
    explicit BasicCartesianRmq(std::vector<T> values);

    std::size_t size() const { return slots_.size(); }

    const T& value(std::size_t i) const { return slots_[i].value; }

    // index in [lo, hi] attaining the maximum; requires lo <= hi < size()
    std::size_t range_argmax(std::size_t lo, std::size_t hi) const;

private:
    static constexpr std::size_t kBlock = 64;

    std::size_t in_block(std::size_t lo, std::size_t hi) const;
    std::size_t better(std::size_t a, std::size_t b) const { return slots_[b].value > slots_[a].value ? b : a; }

    // a value next to its spine mask, so a query touches one line per position
    struct Slot {
        T value;
        std::uint64_t spine;
    };
    std::vector<Slot> slots_;
    // table_[j][b] = argmax over blocks b..b+2^j-1
    std::vector<std::vector<std::uint32_t>> table_;
};

extern template class BasicCartesianRmq<double>;
extern template class BasicCartesianRmq<ExactSum>;

using CartesianRmq = BasicCartesianRmq<double>;

}
