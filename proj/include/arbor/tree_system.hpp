#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

// k >= 1 trees whose node ids are the per-coordinate domains of system points
class TreeSystem {
public:
    TreeSystem() = default;
    explicit TreeSystem(std::vector<Tree> trees);

    int k() const { return static_cast<int>(trees_.size()); }
    const Tree& tree(int i) const { return trees_[i]; }
    const std::vector<Tree>& trees() const { return trees_; }

    // sum of tree sizes
    std::int64_t total_nodes() const { return total_; }

    // throws InputError when the tuple has the wrong arity or an id is out of range
    void check_point(std::span<const NodeId> point) const;

private:
    std::vector<Tree> trees_;
    std::int64_t total_ = 0;
};

// multiset of k-tuples stored contiguously
class PointSet {
public:
    explicit PointSet(int k = 1) : k_(k) {}
    PointSet(int k, std::vector<NodeId> flat);

    int k() const { return k_; }
    std::size_t size() const { return ids_.size() / k_; }
    bool empty() const { return ids_.empty(); }

    std::span<const NodeId> operator[](std::size_t i) const { return {ids_.data() + i * k_, static_cast<std::size_t>(k_)}; }

    void add(std::span<const NodeId> point);

    const std::vector<NodeId>& flat() const { return ids_; }

private:
    int k_;
    std::vector<NodeId> ids_;
};

void check_points(const TreeSystem& sys, const PointSet& points);

}
