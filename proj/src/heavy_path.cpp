#include "arbor/heavy_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arbor/error.hpp"
#include "arbor/value.hpp"

namespace arbor {

HeavyPathIndex::HeavyPathIndex(const Tree& tree, NodeId root, std::span<const double> alpha,
                               std::span<const NodeId> heavy_hint)
    : root_(root) {
    const NodeId n = tree.size();
    if (static_cast<NodeId>(alpha.size()) != n) {
        throw InputError("alpha has " + std::to_string(alpha.size()) + " entries for " + std::to_string(n) +
                         " nodes");
    }
    for (NodeId v = 0; v < n; ++v) {
        if (std::isnan(alpha[v]) || alpha[v] == kPosInf) {
            throw InputError("alpha(" + std::to_string(v) + ") must be finite or -inf");
        }
    }
    if (!heavy_hint.empty() && static_cast<NodeId>(heavy_hint.size()) != n) {
        throw InputError("heavy child hint must have one entry per node");
    }

    Rooting r = root_tree(tree, root);
    parent_ = std::move(r.parent);
    subtree_.assign(n, 1);
    heavy_.assign(n, kNoNode);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        NodeId v = *it;
        if (parent_[v] != kNoNode) {
            subtree_[parent_[v]] += subtree_[v];
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId w : tree.neighbors(v)) {
            if (w == parent_[v]) {
                continue;
            }
            NodeId& best = heavy_[v];
            if (best == kNoNode || subtree_[w] > subtree_[best] || (subtree_[w] == subtree_[best] && w < best)) {
                best = w;
            }
        }
        if (!heavy_hint.empty() && heavy_hint[v] != kNoNode) {
            NodeId hint = heavy_hint[v];
            if (hint < 0 || hint >= n || parent_[hint] != v || subtree_[hint] != subtree_[heavy_[v]]) {
                throw InputError("heavy child hint " + std::to_string(hint) + " is not a largest child of " +
                                 std::to_string(v));
            }
            heavy_[v] = hint;
        }
    }

    // path roots, numbered by increasing node id
    std::vector<NodeId> roots;
    for (NodeId v = 0; v < n; ++v) {
        if (parent_[v] == kNoNode || heavy_[parent_[v]] != v) {
            roots.push_back(v);
        }
    }
    struct Place {
        PathId path;
        std::int32_t offset;
    };
    std::vector<Place> place(n, Place{kNoPath, 0});
    paths_.resize(roots.size());
    for (std::size_t p = 0; p < roots.size(); ++p) {
        HeavyPath& path = paths_[p];
        for (NodeId v = roots[p]; v != kNoNode; v = heavy_[v]) {
            place[v] = {static_cast<PathId>(p), static_cast<std::int32_t>(path.nodes.size())};
            path.nodes.push_back(v);
        }
        path.father = parent_[roots[p]];
    }
    // BFS order reaches a father before the root of any path hanging below it
    for (NodeId v : r.order) {
        if (place[v].offset != 0 || parent_[v] == kNoNode) {
            continue;
        }
        HeavyPath& path = paths_[place[v].path];
        path.parent_path = place[parent_[v]].path;
        path.level = paths_[path.parent_path].level + 1;
    }
    for (const auto& path : paths_) {
        hp_depth_ = std::max(hp_depth_, path.level + 1);
    }

    h_.assign(n, ExactSum{kNegInf, 0.0, 0});
    hr_.assign(n, ExactSum{kNegInf, 0.0, 0});
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        NodeId v = *it;
        ExactSum h{alpha[v], 0.0, 0};
        ExactSum hr = h;
        for (NodeId w : tree.neighbors(v)) {
            if (w == parent_[v]) {
                continue;
            }
            const ExactSum through = shifted(h_[w], 1);
            h = max(h, through);
            if (w != heavy_[v]) {
                hr = max(hr, through);
            }
        }
        h_[v] = h;
        hr_[v] = hr;
    }

    heads_.resize(paths_.size());
    for (std::size_t p = 0; p < paths_.size(); ++p) {
        heads_[p] = {paths_[p].nodes.front(), paths_[p].father, paths_[p].level, h_[paths_[p].nodes.front()]};
    }

    std::vector<std::uint32_t> light_offsets(n + 1, 0);
    for (const auto& path : paths_) {
        if (path.father != kNoNode) {
            ++light_offsets[path.father + 1];
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        light_offsets[v + 1] += light_offsets[v];
    }
    light_.resize(light_offsets.back());
    {
        std::vector<std::uint32_t> fill(light_offsets.begin(), light_offsets.end() - 1);
        for (std::size_t p = 0; p < paths_.size(); ++p) {
            if (paths_[p].father != kNoNode) {
                light_[fill[paths_[p].father]++] = static_cast<PathId>(p);
            }
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        std::sort(light_.begin() + light_offsets[v], light_.begin() + light_offsets[v + 1],
                  [this](PathId a, PathId b) {
                      const int c = compare(path_height_exact(a), path_height_exact(b));
                      return c != 0 ? c > 0 : a < b;
                  });
    }

    for (auto& path : paths_) {
        std::vector<ExactSum> minus(path.nodes.size());
        std::vector<ExactSum> plus(path.nodes.size());
        for (std::size_t j = 0; j < path.nodes.size(); ++j) {
            const ExactSum& hr = hr_[path.nodes[j]];
            minus[j] = shifted(hr, -static_cast<std::int64_t>(j));
            plus[j] = shifted(hr, static_cast<std::int64_t>(j));
        }
        path.minus = BasicCartesianRmq<ExactSum>(std::move(minus));
        path.plus = BasicCartesianRmq<ExactSum>(std::move(plus));
    }

    hot_.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        hot_[v] = {alpha[v], place[v].path, place[v].offset, light_offsets[v], light_offsets[v + 1]};
    }
}

void HeavyPathIndex::check_range(PathId p, std::int32_t lo, std::int32_t hi) const {
    if (p < 0 || p >= static_cast<PathId>(paths_.size())) {
        throw InputError("no heavy path with id " + std::to_string(p));
    }
    if (lo < 0 || hi >= static_cast<std::int32_t>(paths_[p].nodes.size())) {
        throw InputError("offset range [" + std::to_string(lo) + "," + std::to_string(hi) + "] is off path " +
                         std::to_string(p) + " of length " + std::to_string(paths_[p].nodes.size()));
    }
}

std::optional<OffsetValue> HeavyPathIndex::range_argmax_minus(PathId p, std::int32_t lo, std::int32_t hi) const {
    if (lo > hi) {
        return std::nullopt;
    }
    check_range(p, lo, hi);
    const auto& rmq = paths_[p].minus;
    std::size_t j = rmq.range_argmax(lo, hi);
    return OffsetValue{static_cast<std::int32_t>(j), rounded(rmq.value(j)), rmq.value(j)};
}

std::optional<OffsetValue> HeavyPathIndex::range_argmax_plus(PathId p, std::int32_t lo, std::int32_t hi) const {
    if (lo > hi) {
        return std::nullopt;
    }
    check_range(p, lo, hi);
    const auto& rmq = paths_[p].plus;
    std::size_t j = rmq.range_argmax(lo, hi);
    return OffsetValue{static_cast<std::int32_t>(j), rounded(rmq.value(j)), rmq.value(j)};
}

}
