#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

struct CentroidAncestor {
    NodeId centroid;
    std::int32_t distance;  // tree distance between the node and this centroid
    NodeId toward;          // neighbor of the centroid on the path to the node; the node itself at distance 0
};

/*
 * Centroid decomposition of a tree. For every node v the centroid-ancestor
 * path P(v) is stored deepest first: P(v)[0] is v itself (every node is the
 * centroid of some component) and P(v).back() is the global root centroid.
 * For any two nodes, their deepest common centroid-ancestor lies on the tree
 * path between them.
 */
class CentroidIndex {
public:
    CentroidIndex() = default;
    explicit CentroidIndex(const Tree& tree);

    NodeId size() const { return static_cast<NodeId>(offsets_.size()) - 1; }

    std::span<const CentroidAncestor> path(NodeId v) const {
        return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
    }

    // maximum |P(v)| over all nodes
    int depth() const { return depth_; }

    NodeId root() const { return root_; }

    // tree distance through the deepest common centroid-ancestor
    std::int32_t distance(NodeId u, NodeId v) const;

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<CentroidAncestor> entries_;
    int depth_ = 0;
    NodeId root_ = 0;
};

inline CentroidIndex centroid_decomposition(const Tree& tree) { return CentroidIndex(tree); }

}
