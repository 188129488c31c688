#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbor/tree.hpp"

namespace arbor {

/*
 * Simple undirected graph on 0..n-1, CSR adjacency. Construction rejects self
 * loops, duplicate edges and out-of-range ids; connectivity is checked
 * separately since subgraph builders may legitimately produce pieces.
 */
class Graph {
public:
    Graph() = default;
    Graph(NodeId node_count, std::span<const Edge> edges);

    NodeId size() const { return static_cast<NodeId>(offsets_.empty() ? 0 : offsets_.size() - 1); }
    std::size_t edge_count() const { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }

    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(NodeId u, NodeId v) const;

    bool connected() const;

    std::vector<Edge> edges() const;

    // subgraph induced by `vertices`; vertex i of the result is vertices[i]
    Graph induced(std::span<const NodeId> vertices) const;

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<NodeId> targets_;
};

Graph to_graph(const Tree& tree);

inline constexpr std::int32_t kUnreached = -1;

// unit-weight BFS distances; unreachable vertices get kUnreached
std::vector<std::int32_t> bfs(const Graph& g, NodeId source);
std::vector<std::int32_t> bfs(const Graph& g, std::span<const NodeId> sources);

}
