#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arbor/range_tree.hpp"
#include "arbor/value.hpp"

namespace arbor::detail {

// open-addressing map from fixed-length id tuples to dense ids 0, 1, ...
class TupleMap {
public:
    explicit TupleMap(int length);

    std::int32_t find(std::span<const NodeId> key) const;
    std::int32_t insert(std::span<const NodeId> key);
    std::size_t size() const { return count_; }

private:
    std::uint64_t hash(std::span<const NodeId> key) const;
    bool equal(std::int32_t id, std::span<const NodeId> key) const;
    void grow();

    int length_;
    std::size_t count_ = 0;
    std::vector<NodeId> keys_;
    std::vector<std::int32_t> slots_;
};

/*
 * Points partitioned by an exact-match key. Equality constraints select a
 * group through the hash map; the remaining coordinates are filtered by a
 * range tree, or by a direct scan for groups too small to need one.
 */
class GroupedPoints {
public:
    GroupedPoints(int key_length, int dimension);

    void add(std::span<const NodeId> key, std::span<const Coord> coords, double value, std::int64_t payload);
    void finalize();

    std::size_t size() const { return values_.size(); }
    std::size_t group_count() const { return groups_.size(); }

    std::optional<RangeHit> best(std::span<const NodeId> key, std::span<const CoordConstraint> cons) const;
    std::size_t count(std::span<const NodeId> key, std::span<const CoordConstraint> cons) const;

private:
    static constexpr std::size_t kScanLimit = 48;

    struct Group {
        std::size_t begin;
        std::size_t end;
        std::int32_t tree = -1;
    };

    bool admits(std::size_t row, std::span<const CoordConstraint> cons) const;

    int dim_;
    TupleMap map_;
    std::vector<std::int32_t> group_of_;
    std::vector<Coord> coords_;
    std::vector<double> values_;
    std::vector<std::int64_t> payloads_;
    std::vector<Group> groups_;
    std::vector<RangeTree> trees_;
};

}
