#include "arbor/tree.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "arbor/error.hpp"

namespace arbor {

namespace {

std::string edge_str(const Edge& e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

struct DisjointSets {
    std::vector<NodeId> parent;
    explicit DisjointSets(NodeId n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    NodeId find(NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[a] = b;
        return true;
    }
};

}

Tree::Tree() : offsets_{0, 0} {}

Tree::Tree(NodeId node_count, std::span<const Edge> edges) {
    if (node_count < 1) {
        throw InputError("tree must have at least one node");
    }
    for (const auto& e : edges) {
        if (e.first < 0 || e.first >= node_count || e.second < 0 || e.second >= node_count) {
            throw InputError("edge " + edge_str(e) + " has an id outside 0.." + std::to_string(node_count - 1));
        }
        if (e.first == e.second) {
            throw InputError("edge " + edge_str(e) + " is a self loop");
        }
    }
    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (auto& e : sorted) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        throw InputError("duplicate edge " + edge_str(*dup));
    }
    DisjointSets sets(node_count);
    for (const auto& e : edges) {
        if (!sets.unite(e.first, e.second)) {
            throw InputError("edge " + edge_str(e) + " closes a cycle");
        }
    }
    if (static_cast<NodeId>(edges.size()) != node_count - 1) {
        throw InputError("edges leave the node set disconnected (" + std::to_string(edges.size()) + " edges for " +
                         std::to_string(node_count) + " nodes)");
    }

    offsets_.assign(node_count + 1, 0);
    for (const auto& e : edges) {
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
}

std::vector<Edge> Tree::edges() const {
    std::vector<Edge> out;
    out.reserve(size() - 1);
    for (NodeId v = 0; v < size(); ++v) {
        for (NodeId w : neighbors(v)) {
            if (v < w) {
                out.emplace_back(v, w);
            }
        }
    }
    return out;
}

Tree build_tree(std::span<const Edge> edges) {
    return Tree(static_cast<NodeId>(edges.size()) + 1, edges);
}

Tree build_tree(NodeId node_count, std::span<const Edge> edges) {
    return Tree(node_count, edges);
}

Rooting root_tree(const Tree& tree, NodeId root) {
    if (!tree.contains(root)) {
        throw InputError("root " + std::to_string(root) + " is not a node of the tree");
    }
    Rooting r;
    r.root = root;
    r.parent.assign(tree.size(), kNoNode);
    r.depth.assign(tree.size(), 0);
    r.order.reserve(tree.size());
    r.order.push_back(root);
    for (std::size_t i = 0; i < r.order.size(); ++i) {
        NodeId v = r.order[i];
        for (NodeId w : tree.neighbors(v)) {
            if (w != r.parent[v]) {
                r.parent[w] = v;
                r.depth[w] = r.depth[v] + 1;
                r.order.push_back(w);
            }
        }
    }
    return r;
}

std::vector<std::int32_t> bfs_distances(const Tree& tree, NodeId root) {
    return root_tree(tree, root).depth;
}

NodeId centroid(const Tree& tree) {
    const NodeId n = tree.size();
    Rooting r = root_tree(tree, 0);
    std::vector<NodeId> sub(n, 1);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        if (r.parent[*it] != kNoNode) {
            sub[r.parent[*it]] += sub[*it];
        }
    }
    for (NodeId v : r.order) {
        NodeId largest = n - sub[v];
        for (NodeId w : tree.neighbors(v)) {
            if (w != r.parent[v]) {
                largest = std::max(largest, sub[w]);
            }
        }
        if (largest <= n / 2) {
            return v;
        }
    }
    return r.root;  // unreachable: every tree has a centroid
}

}
