#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "arbor/value.hpp"

namespace arbor {

using Edge = std::pair<NodeId, NodeId>;

/*
 * Unrooted tree on node ids 0..n-1 with unit edge weights, stored as CSR
 * adjacency. Neighbors keep the order in which their edges were supplied.
 */
class Tree {
public:
    // single node tree
    Tree();

    // validates that `edges` forms a tree on 0..n-1; throws InputError naming
    // the first violation (out-of-range id, self loop, duplicate edge, cycle,
    // disconnected node set)
    Tree(NodeId node_count, std::span<const Edge> edges);

    NodeId size() const { return static_cast<NodeId>(offsets_.size()) - 1; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    bool contains(NodeId v) const { return v >= 0 && v < size(); }

    std::vector<Edge> edges() const;

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<NodeId> targets_;
};

// node count is inferred as |edges| + 1
Tree build_tree(std::span<const Edge> edges);
Tree build_tree(NodeId node_count, std::span<const Edge> edges);

// unit-weight distances from root; throws InputError on a bad root
std::vector<std::int32_t> bfs_distances(const Tree& tree, NodeId root);

/*
 * Parent pointers and a BFS order (root first) of a tree rooted at `root`.
 * Iterating `order` backwards visits children before parents.
 */
struct Rooting {
    NodeId root = 0;
    std::vector<NodeId> parent;
    std::vector<NodeId> order;
    std::vector<std::int32_t> depth;
};

Rooting root_tree(const Tree& tree, NodeId root);

// a node whose removal leaves components of at most floor(n/2) nodes
NodeId centroid(const Tree& tree);

}
