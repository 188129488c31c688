#include "arbor/graph.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "arbor/error.hpp"

namespace arbor {

Graph::Graph(NodeId node_count, std::span<const Edge> edges) {
    if (node_count < 0) {
        throw InputError("negative vertex count");
    }
    offsets_.assign(node_count + 1, 0);
    for (const auto& e : edges) {
        if (e.first < 0 || e.first >= node_count || e.second < 0 || e.second >= node_count) {
            throw InputError("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                             ") has an id outside 0.." + std::to_string(node_count - 1));
        }
        if (e.first == e.second) {
            throw InputError("self loop at vertex " + std::to_string(e.first));
        }
        ++offsets_[e.first + 1];
        ++offsets_[e.second + 1];
    }
    for (NodeId v = 0; v < node_count; ++v) {
        offsets_[v + 1] += offsets_[v];
    }
    targets_.resize(offsets_.back());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges) {
        targets_[fill[e.first]++] = e.second;
        targets_[fill[e.second]++] = e.first;
    }
    for (NodeId v = 0; v < node_count; ++v) {
        auto first = targets_.begin() + offsets_[v];
        auto last = targets_.begin() + offsets_[v + 1];
        std::sort(first, last);
        auto dup = std::adjacent_find(first, last);
        if (dup != last) {
            throw InputError("duplicate edge (" + std::to_string(v) + "," + std::to_string(*dup) + ")");
        }
    }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool Graph::connected() const {
    if (size() == 0) {
        return true;
    }
    auto d = bfs(*this, 0);
    return std::none_of(d.begin(), d.end(), [](std::int32_t x) { return x == kUnreached; });
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId v = 0; v < size(); ++v) {
        for (NodeId w : neighbors(v)) {
            if (v < w) {
                out.emplace_back(v, w);
            }
        }
    }
    return out;
}

Graph Graph::induced(std::span<const NodeId> vertices) const {
    std::unordered_map<NodeId, NodeId> local;
    local.reserve(vertices.size() * 2);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        local.emplace(vertices[i], static_cast<NodeId>(i));
    }
    std::vector<Edge> sub;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (NodeId w : neighbors(vertices[i])) {
            auto it = local.find(w);
            if (it != local.end() && static_cast<NodeId>(i) < it->second) {
                sub.emplace_back(static_cast<NodeId>(i), it->second);
            }
        }
    }
    return Graph(static_cast<NodeId>(vertices.size()), sub);
}

Graph to_graph(const Tree& tree) {
    auto e = tree.edges();
    return Graph(tree.size(), e);
}

std::vector<std::int32_t> bfs(const Graph& g, NodeId source) {
    NodeId s[1] = {source};
    return bfs(g, s);
}

std::vector<std::int32_t> bfs(const Graph& g, std::span<const NodeId> sources) {
    std::vector<std::int32_t> dist(g.size(), kUnreached);
    std::vector<NodeId> queue;
    queue.reserve(g.size());
    for (NodeId s : sources) {
        if (s < 0 || s >= g.size()) {
            throw InputError("BFS source " + std::to_string(s) + " out of range");
        }
        if (dist[s] == kUnreached) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId v = queue[head];
        for (NodeId w : g.neighbors(v)) {
            if (dist[w] == kUnreached) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}
