#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "arbor/centroid.hpp"
#include "arbor/tree_system.hpp"

namespace arbor {

namespace detail {
class GroupedPoints;
}

enum class Combine { Plus, Min, Max };

// value of the farthest point and its index in the point set
struct OdotResult {
    std::int64_t value;
    std::size_t witness;
};

// sum over i of |P(s_i)| products: the number of ancestor tuples an index stores per point
std::int64_t ancestor_tuple_count(const std::vector<CentroidIndex>& cents, const PointSet& points);

/*
 * max over s in S of sum_i d(v_i, s_i).
 *
 * For a query v, S splits into cells S_c indexed by tuples c of centroid
 * ancestors of v: s belongs to S_c when every c_i is the deepest common
 * centroid ancestor of v_i and s_i. Each stored point of s carries, per
 * coordinate, c_i and the neighbor of c_i towards s_i; a cell is selected by
 * matching c exactly and requiring the neighbor to differ from the one
 * towards v_i.
 */
class PlusIndex {
public:
    PlusIndex(const TreeSystem& sys, const PointSet& points);
    PlusIndex(PlusIndex&&) noexcept;
    ~PlusIndex();

    OdotResult query(std::span<const NodeId> v) const;

    std::size_t point_count() const;
    // |S_c| for every ancestor tuple c enumerated by query(v)
    std::vector<std::size_t> cell_sizes(std::span<const NodeId> v) const;

private:
    TreeSystem sys_;
    std::vector<CentroidIndex> cents_;
    std::unique_ptr<detail::GroupedPoints> groups_;
};

/*
 * max over s in S of min_i d(v_i, s_i).
 *
 * Cells are refined by the coordinate i attaining the inner minimum: the
 * stored point for (s, c, i) carries the differences d(s_i,c_i) - d(s_j,c_j)
 * for j != i, which the query bounds by d(v_j,c_j) - d(v_i,c_i).
 */
class MinIndex {
public:
    MinIndex(const TreeSystem& sys, const PointSet& points);
    MinIndex(MinIndex&&) noexcept;
    ~MinIndex();

    OdotResult query(std::span<const NodeId> v) const;

    std::size_t point_count() const;

private:
    TreeSystem sys_;
    std::vector<CentroidIndex> cents_;
    std::unique_ptr<detail::GroupedPoints> groups_;
};

/*
 * max over s in S of max_i d(v_i, s_i), answered per tree on the subtree
 * spanned by the projection of S.
 */
class MaxIndex {
public:
    MaxIndex(const TreeSystem& sys, const PointSet& points);

    OdotResult query(std::span<const NodeId> v) const;

    // membership in the pruned tree of coordinate i
    bool in_pruned(int i, NodeId v) const { return trees_[i].attach[v] == v; }
    bool in_projection(int i, NodeId v) const { return trees_[i].owner[v] >= 0; }
    const Tree& tree(int i) const { return sys_.tree(i); }
    int k() const { return sys_.k(); }

private:
    struct PerTree {
        std::vector<NodeId> attach;         // nearest pruned-tree node
        std::vector<std::int32_t> lift;     // distance to it
        std::vector<std::int32_t> dist_a;   // distances from the two ends of a
        std::vector<std::int32_t> dist_b;   // diameter of the pruned tree
        std::vector<std::int64_t> owner;    // some point index projecting onto the node, or -1
        NodeId end_a = 0;
        NodeId end_b = 0;
    };

    TreeSystem sys_;
    std::vector<PerTree> trees_;
};

}
