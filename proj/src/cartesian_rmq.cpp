#include "arbor/cartesian_rmq.hpp"

#include <algorithm>
#include <bit>

namespace arbor {

template <class T>
BasicCartesianRmq<T>::BasicCartesianRmq(std::vector<T> values) {
    const std::size_t n = values.size();
    slots_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        slots_[i].value = std::move(values[i]);
    }
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::uint32_t> block_best(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t base = b * kBlock;
        std::uint64_t cur = 0;
        for (std::size_t i = base; i < std::min(n, base + kBlock); ++i) {
            while (cur != 0) {
                std::size_t top = base + (63 - std::countl_zero(cur));
                if (slots_[top].value > slots_[i].value) {
                    break;
                }
                cur &= ~(std::uint64_t{1} << (top - base));
            }
            cur |= std::uint64_t{1} << (i - base);
            slots_[i].spine = cur;
        }
        // the bottom of the final spine is the block maximum
        block_best[b] = static_cast<std::uint32_t>(base + std::countr_zero(cur));
    }
    if (blocks == 0) {
        return;
    }
    table_.push_back(std::move(block_best));
    for (std::size_t width = 2; width <= blocks; width *= 2) {
        const auto& prev = table_.back();
        std::vector<std::uint32_t> next(blocks - width + 1);
        for (std::size_t b = 0; b + width <= blocks; ++b) {
            next[b] = static_cast<std::uint32_t>(better(prev[b], prev[b + width / 2]));
        }
        table_.push_back(std::move(next));
    }
}

template <class T>
std::size_t BasicCartesianRmq<T>::in_block(std::size_t lo, std::size_t hi) const {
    const std::size_t base = lo - lo % kBlock;
    std::uint64_t m = slots_[hi].spine & (~std::uint64_t{0} << (lo - base));
    return base + std::countr_zero(m);
}

template <class T>
std::size_t BasicCartesianRmq<T>::range_argmax(std::size_t lo, std::size_t hi) const {
    const std::size_t bl = lo / kBlock;
    const std::size_t bh = hi / kBlock;
    if (bl == bh) {
        return in_block(lo, hi);
    }
    std::size_t best = better(in_block(lo, bl * kBlock + kBlock - 1), in_block(bh * kBlock, hi));
    if (bl + 1 < bh) {
        const std::size_t first = bl + 1;
        const std::size_t count = bh - first;
        const int level = std::bit_width(count) - 1;
        best = better(best, table_[level][first]);
        best = better(best, table_[level][bh - (std::size_t{1} << level)]);
    }
    return best;
}

template class BasicCartesianRmq<double>;
template class BasicCartesianRmq<ExactSum>;

}
