#include "arbor/centroid.hpp"

#include <algorithm>

namespace arbor {

CentroidIndex::CentroidIndex(const Tree& tree) {
    const NodeId n = tree.size();
    std::vector<std::vector<CentroidAncestor>> rootward(n);
    std::vector<char> removed(n, 0);
    std::vector<NodeId> parent(n, kNoNode);
    std::vector<NodeId> sub(n, 0);
    std::vector<std::int32_t> dist(n, 0);
    std::vector<NodeId> step(n, kNoNode);
    std::vector<NodeId> comp;
    std::vector<NodeId> pending{0};
    comp.reserve(n);

    bool first = true;
    while (!pending.empty()) {
        NodeId start = pending.back();
        pending.pop_back();

        // collect the component of `start` in BFS order
        comp.clear();
        comp.push_back(start);
        parent[start] = kNoNode;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            NodeId v = comp[i];
            for (NodeId w : tree.neighbors(v)) {
                if (!removed[w] && w != parent[v]) {
                    parent[w] = v;
                    comp.push_back(w);
                }
            }
        }
        const NodeId m = static_cast<NodeId>(comp.size());
        for (auto it = comp.rbegin(); it != comp.rend(); ++it) {
            sub[*it] = 1;
            for (NodeId w : tree.neighbors(*it)) {
                if (!removed[w] && w != parent[*it]) {
                    sub[*it] += sub[w];
                }
            }
        }
        NodeId c = start;
        for (NodeId v : comp) {
            NodeId largest = m - sub[v];
            for (NodeId w : tree.neighbors(v)) {
                if (!removed[w] && w != parent[v]) {
                    largest = std::max(largest, sub[w]);
                }
            }
            if (largest <= m / 2) {
                c = v;
                break;
            }
        }
        if (first) {
            root_ = c;
            first = false;
        }

        // distances from the centroid inside its component
        comp.clear();
        comp.push_back(c);
        parent[c] = kNoNode;
        dist[c] = 0;
        step[c] = c;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            NodeId v = comp[i];
            rootward[v].push_back({c, dist[v], step[v]});
            for (NodeId w : tree.neighbors(v)) {
                if (!removed[w] && w != parent[v]) {
                    parent[w] = v;
                    dist[w] = dist[v] + 1;
                    step[w] = v == c ? w : step[v];
                    comp.push_back(w);
                }
            }
        }
        removed[c] = 1;
        for (NodeId w : tree.neighbors(c)) {
            if (!removed[w]) {
                pending.push_back(w);
            }
        }
    }

    offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + static_cast<std::uint32_t>(rootward[v].size());
        depth_ = std::max(depth_, static_cast<int>(rootward[v].size()));
    }
    entries_.reserve(offsets_.back());
    for (NodeId v = 0; v < n; ++v) {
        entries_.insert(entries_.end(), rootward[v].rbegin(), rootward[v].rend());
    }
}

std::int32_t CentroidIndex::distance(NodeId u, NodeId v) const {
    auto pu = path(u);
    auto pv = path(v);
    std::int32_t best = 0;
    for (auto iu = pu.rbegin(), iv = pv.rbegin(); iu != pu.rend() && iv != pv.rend(); ++iu, ++iv) {
        if (iu->centroid != iv->centroid) {
            break;
        }
        best = iu->distance + iv->distance;
    }
    return best;
}

}
