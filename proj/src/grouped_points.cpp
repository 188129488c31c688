#include "grouped_points.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor::detail {

TupleMap::TupleMap(int length) : length_(length), slots_(16, -1) {}

std::uint64_t TupleMap::hash(std::span<const NodeId> key) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (NodeId x : key) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
    }
    return h ^ (h >> 31);
}

bool TupleMap::equal(std::int32_t id, std::span<const NodeId> key) const {
    return std::equal(key.begin(), key.end(), keys_.begin() + static_cast<std::size_t>(id) * length_);
}

std::int32_t TupleMap::find(std::span<const NodeId> key) const {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(key) & mask;; s = (s + 1) & mask) {
        std::int32_t id = slots_[s];
        if (id < 0) {
            return -1;
        }
        if (equal(id, key)) {
            return id;
        }
    }
}

std::int32_t TupleMap::insert(std::span<const NodeId> key) {
    if (static_cast<int>(key.size()) != length_) {
        throw InputError("tuple key length mismatch");
    }
    if (2 * (count_ + 1) > slots_.size()) {
        grow();
    }
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash(key) & mask;; s = (s + 1) & mask) {
        std::int32_t id = slots_[s];
        if (id < 0) {
            id = static_cast<std::int32_t>(count_++);
            keys_.insert(keys_.end(), key.begin(), key.end());
            slots_[s] = id;
            return id;
        }
        if (equal(id, key)) {
            return id;
        }
    }
}

void TupleMap::grow() {
    std::vector<std::int32_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, -1);
    const std::size_t mask = slots_.size() - 1;
    for (std::int32_t id : old) {
        if (id < 0) {
            continue;
        }
        std::span<const NodeId> key(keys_.data() + static_cast<std::size_t>(id) * length_, length_);
        std::size_t s = hash(key) & mask;
        while (slots_[s] >= 0) {
            s = (s + 1) & mask;
        }
        slots_[s] = id;
    }
}

GroupedPoints::GroupedPoints(int key_length, int dimension) : dim_(dimension), map_(key_length) {}

void GroupedPoints::add(std::span<const NodeId> key, std::span<const Coord> coords, double value,
                        std::int64_t payload) {
    group_of_.push_back(map_.insert(key));
    coords_.insert(coords_.end(), coords.begin(), coords.end());
    values_.push_back(value);
    payloads_.push_back(payload);
}

void GroupedPoints::finalize() {
    const std::size_t n = values_.size();
    const std::size_t g = map_.size();
    std::vector<std::size_t> start(g + 1, 0);
    for (auto id : group_of_) {
        ++start[id + 1];
    }
    for (std::size_t i = 0; i < g; ++i) {
        start[i + 1] += start[i];
    }
    std::vector<Coord> coords(coords_.size());
    std::vector<double> values(n);
    std::vector<std::int64_t> payloads(n);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t row = 0; row < n; ++row) {
        std::size_t to = fill[group_of_[row]]++;
        std::copy_n(coords_.begin() + row * dim_, dim_, coords.begin() + to * dim_);
        values[to] = values_[row];
        payloads[to] = payloads_[row];
    }
    coords_ = std::move(coords);
    values_ = std::move(values);
    payloads_ = std::move(payloads);
    group_of_.clear();
    group_of_.shrink_to_fit();

    groups_.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
        groups_[i] = {start[i], start[i + 1], -1};
        if (start[i + 1] - start[i] > kScanLimit && dim_ > 0) {
            groups_[i].tree = static_cast<std::int32_t>(trees_.size());
            trees_.emplace_back(
                dim_, std::vector<Coord>(coords_.begin() + start[i] * dim_, coords_.begin() + start[i + 1] * dim_),
                std::vector<double>(values_.begin() + start[i], values_.begin() + start[i + 1]),
                std::vector<std::int64_t>(payloads_.begin() + start[i], payloads_.begin() + start[i + 1]));
        }
    }
}

bool GroupedPoints::admits(std::size_t row, std::span<const CoordConstraint> cons) const {
    for (int d = 0; d < dim_; ++d) {
        if (!cons[d].admits(coords_[row * dim_ + d])) {
            return false;
        }
    }
    return true;
}

std::optional<RangeHit> GroupedPoints::best(std::span<const NodeId> key, std::span<const CoordConstraint> cons) const {
    std::int32_t id = map_.find(key);
    if (id < 0) {
        return std::nullopt;
    }
    const Group& grp = groups_[id];
    if (grp.tree >= 0) {
        return trees_[grp.tree].query_constrained(cons);
    }
    std::optional<RangeHit> hit;
    for (std::size_t row = grp.begin; row < grp.end; ++row) {
        if ((!hit || values_[row] > hit->value) && admits(row, cons)) {
            hit = RangeHit{values_[row], payloads_[row]};
        }
    }
    return hit;
}

std::size_t GroupedPoints::count(std::span<const NodeId> key, std::span<const CoordConstraint> cons) const {
    std::int32_t id = map_.find(key);
    if (id < 0) {
        return 0;
    }
    std::size_t total = 0;
    for (std::size_t row = groups_[id].begin; row < groups_[id].end; ++row) {
        total += admits(row, cons) ? 1 : 0;
    }
    return total;
}

}
