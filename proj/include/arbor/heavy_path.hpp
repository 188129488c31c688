#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arbor/cartesian_rmq.hpp"
#include "arbor/tree.hpp"

namespace arbor {

using PathId = std::int32_t;
inline constexpr PathId kNoPath = -1;

struct HeavyPath {
    std::vector<NodeId> nodes;     // nodes[j] is the node at offset j; nodes[0] is the path root
    NodeId father = kNoNode;       // parent of the path root; none for the top path
    PathId parent_path = kNoPath;  // parent in the heavy-path tree
    int level = 0;                 // depth in the heavy-path tree, top path at 0
    BasicCartesianRmq<ExactSum> minus;  // over rest_height(nodes[j]) - j
    BasicCartesianRmq<ExactSum> plus;   // over rest_height(nodes[j]) + j
};

struct OffsetValue {
    std::int32_t offset;
    double value;    // rounded
    ExactSum exact;  // node weight in the first real part
};

/*
 * Heavy-path decomposition of a rooted tree together with the weighted height
 * aggregates used by subset-eccentricity queries. For a node weighting alpha:
 *
 *   height(v)      = max over x below v (inclusive) of d(v,x) + alpha(x)
 *   rest_height(v) = the same without the subtree of the heavy child
 *
 * Paths are numbered by increasing id of their root node. The heavy child of
 * a node is a child with the largest subtree, ties going to the lowest id
 * unless `heavy_hint` names another maximal child. light_paths(v) lists the
 * paths rooted at light children of v by non-increasing height, ties by lower
 * path id.
 */
class HeavyPathIndex {
public:
    HeavyPathIndex() = default;

    // alpha values must be finite or kNegInf; heavy_hint is empty or has one
    // entry per node (kNoNode for no preference)
    HeavyPathIndex(const Tree& tree, NodeId root, std::span<const double> alpha,
                   std::span<const NodeId> heavy_hint = {});

    NodeId size() const { return static_cast<NodeId>(parent_.size()); }
    NodeId root() const { return root_; }

    NodeId parent(NodeId v) const { return parent_[v]; }
    NodeId subtree_size(NodeId v) const { return subtree_[v]; }
    NodeId heavy_child(NodeId v) const { return heavy_[v]; }

    PathId path_of(NodeId v) const { return hot_[v].path; }
    std::int32_t offset(NodeId v) const { return hot_[v].offset; }

    std::size_t path_count() const { return paths_.size(); }
    const HeavyPath& path(PathId p) const { return paths_[p]; }
    NodeId path_root(PathId p) const { return heads_[p].root; }
    NodeId path_father(PathId p) const { return heads_[p].father; }
    int path_level(PathId p) const { return heads_[p].level; }

    double alpha(NodeId v) const { return hot_[v].alpha; }
    double height(NodeId v) const { return rounded(h_[v]); }
    double rest_height(NodeId v) const { return rounded(hr_[v]); }
    double path_height(PathId p) const { return height(path_root(p)); }
    // unrounded: the weight of a farthest node plus its distance
    const ExactSum& height_exact(NodeId v) const { return h_[v]; }
    const ExactSum& path_height_exact(PathId p) const { return heads_[p].height; }

    std::span<const PathId> light_paths(NodeId v) const {
        return {light_.data() + hot_[v].light_begin, light_.data() + hot_[v].light_end};
    }

    // number of levels of the heavy-path tree
    int hp_depth() const { return hp_depth_; }

    // maximizer of rest_height(nodes[j]) - j (resp. + j) over offsets j in [lo, hi] of a
    // path; empty when lo > hi, InputError when a bound is off the path
    std::optional<OffsetValue> range_argmax_minus(PathId p, std::int32_t lo, std::int32_t hi) const;
    std::optional<OffsetValue> range_argmax_plus(PathId p, std::int32_t lo, std::int32_t hi) const;

private:
    void check_range(PathId p, std::int32_t lo, std::int32_t hi) const;

    NodeId root_ = 0;
    std::vector<NodeId> parent_;
    std::vector<NodeId> subtree_;
    std::vector<NodeId> heavy_;
    // fields a query reads per node and per path, packed to share cache lines
    struct NodeHot {
        double alpha;
        PathId path;
        std::int32_t offset;
        std::uint32_t light_begin;
        std::uint32_t light_end;
    };
    struct PathHead {
        NodeId root;
        NodeId father;
        std::int32_t level;
        ExactSum height;
    };
    std::vector<NodeHot> hot_;
    std::vector<PathHead> heads_;
    std::vector<HeavyPath> paths_;
    std::vector<ExactSum> h_;
    std::vector<ExactSum> hr_;
    std::vector<PathId> light_;
    int hp_depth_ = 0;
};

inline HeavyPathIndex heavy_path_decomposition(const Tree& tree, NodeId root, std::span<const double> alpha,
                                               std::span<const NodeId> heavy_hint = {}) {
    return HeavyPathIndex(tree, root, alpha, heavy_hint);
}

}
