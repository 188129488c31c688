#include "arbor/generators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "arbor/error.hpp"

namespace arbor {

namespace {

NodeId uniform(Rng& rng, NodeId lo, NodeId hi) {
    return std::uniform_int_distribution<NodeId>(lo, hi)(rng);
}

Tree relabeled(NodeId n, const std::vector<Edge>& edges, Rng& rng) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) {
        out.emplace_back(perm[u], perm[v]);
    }
    std::shuffle(out.begin(), out.end(), rng);
    return Tree(n, out);
}

std::vector<Edge> prufer_edges(NodeId n, Rng& rng) {
    std::vector<Edge> edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
    }
    if (n <= 2) {
        return edges;
    }
    std::vector<NodeId> code(n - 2);
    for (auto& c : code) {
        c = uniform(rng, 0, n - 1);
    }
    std::vector<NodeId> degree(n, 1);
    for (NodeId c : code) {
        ++degree[c];
    }
    // linear decoding with a moving pointer
    NodeId ptr = 0;
    while (degree[ptr] != 1) {
        ++ptr;
    }
    NodeId leaf = ptr;
    for (NodeId c : code) {
        edges.emplace_back(leaf, c);
        if (--degree[c] == 1 && c < ptr) {
            leaf = c;
        } else {
            ++ptr;
            while (degree[ptr] != 1) {
                ++ptr;
            }
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return edges;
}

}

Tree path_tree(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v) {
        edges.emplace_back(v - 1, v);
    }
    return Tree(n, edges);
}

Tree star_tree(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v) {
        edges.emplace_back(0, v);
    }
    return Tree(n, edges);
}

Tree random_tree(NodeId n, Rng& rng, TreeShape shape) {
    if (n < 1) {
        throw InputError("a tree needs at least one node");
    }
    std::vector<Edge> edges;
    switch (shape) {
        case TreeShape::Recursive:
            for (NodeId v = 1; v < n; ++v) {
                edges.emplace_back(uniform(rng, 0, v - 1), v);
            }
            break;
        case TreeShape::Prufer:
            edges = prufer_edges(n, rng);
            break;
        case TreeShape::Caterpillar: {
            NodeId spine = std::max<NodeId>(1, n / 3);
            for (NodeId v = 1; v < n; ++v) {
                edges.emplace_back(v < spine ? v - 1 : uniform(rng, 0, spine - 1), v);
            }
            break;
        }
        case TreeShape::Deep:
            // parents drawn from a short window behind each node
            for (NodeId v = 1; v < n; ++v) {
                edges.emplace_back(uniform(rng, std::max<NodeId>(0, v - 3), v - 1), v);
            }
            break;
        case TreeShape::Path:
            return relabeled(n, path_tree(n).edges(), rng);
        case TreeShape::Star:
            return relabeled(n, star_tree(n).edges(), rng);
    }
    return relabeled(n, edges, rng);
}

Tree random_tree_any(NodeId n, Rng& rng) {
    static constexpr TreeShape kShapes[] = {TreeShape::Recursive, TreeShape::Recursive, TreeShape::Prufer,
                                            TreeShape::Prufer,    TreeShape::Caterpillar, TreeShape::Deep,
                                            TreeShape::Path,      TreeShape::Star};
    return random_tree(n, rng, kShapes[uniform(rng, 0, 7)]);
}

Graph grid_graph(NodeId rows, NodeId cols) {
    if (rows < 1 || cols < 1) {
        throw InputError("grid sides must be positive");
    }
    std::vector<Edge> edges;
    for (NodeId r = 0; r < rows; ++r) {
        for (NodeId c = 0; c < cols; ++c) {
            NodeId v = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(v, v + 1);
            if (r + 1 < rows) edges.emplace_back(v, v + cols);
        }
    }
    return Graph(rows * cols, edges);
}

Graph cube_graph() {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < 8; ++v) {
        for (NodeId bit = 1; bit < 8; bit <<= 1) {
            if (!(v & bit)) edges.emplace_back(v, v | bit);
        }
    }
    return Graph(8, edges);
}

Graph tree_product(const Tree& first, const Tree& second) {
    const NodeId a = first.size();
    const NodeId b = second.size();
    std::vector<Edge> edges;
    for (auto [u, v] : first.edges()) {
        for (NodeId y = 0; y < b; ++y) {
            edges.emplace_back(u * b + y, v * b + y);
        }
    }
    for (auto [u, v] : second.edges()) {
        for (NodeId x = 0; x < a; ++x) {
            edges.emplace_back(x * b + u, x * b + v);
        }
    }
    return Graph(a * b, edges);
}

std::vector<NodeId> random_gated_subset(const Graph& g, Rng& rng, int rounds, NodeId min_size) {
    std::vector<NodeId> current(g.size());
    std::iota(current.begin(), current.end(), 0);
    std::vector<char> inside(g.size(), 1);
    for (int r = 0; r < rounds && current.size() > 1; ++r) {
        NodeId u = current[uniform(rng, 0, static_cast<NodeId>(current.size()) - 1)];
        std::vector<NodeId> nbrs;
        for (NodeId w : g.neighbors(u)) {
            if (inside[w]) nbrs.push_back(w);
        }
        if (nbrs.empty()) {
            continue;
        }
        NodeId v = nbrs[uniform(rng, 0, static_cast<NodeId>(nbrs.size()) - 1)];
        auto du = bfs(g, u);
        auto dv = bfs(g, v);
        bool keep_u_side = std::bernoulli_distribution(0.5)(rng);
        std::vector<NodeId> next;
        for (NodeId x : current) {
            if ((du[x] < dv[x]) == keep_u_side) next.push_back(x);
        }
        if (static_cast<NodeId>(next.size()) < min_size) {
            continue;
        }
        std::fill(inside.begin(), inside.end(), 0);
        for (NodeId x : next) inside[x] = 1;
        current = std::move(next);
    }
    return current;
}

Graph grid_wheel(int quadrants, NodeId radius) {
    if (quadrants < 4 || radius < 1) {
        throw InputError("a grid wheel needs at least 4 quadrants and radius >= 1");
    }
    const NodeId m = radius;
    // center 0, ray r at offsets 1..m, then each quadrant's (m x m) interior
    auto ray = [&](int r, NodeId t) -> NodeId { return t == 0 ? 0 : 1 + (r % quadrants) * m + (t - 1); };
    auto cell = [&](int q, NodeId i, NodeId j) -> NodeId {
        if (j == 0) return ray(q, i);
        if (i == 0) return ray(q + 1, j);
        return 1 + quadrants * m + q * m * m + (i - 1) * m + (j - 1);
    };
    std::vector<Edge> edges;
    for (int q = 0; q < quadrants; ++q) {
        // ray q is row j == 0 of quadrant q; ray q+1 is emitted by the next quadrant
        for (NodeId i = 0; i < m; ++i) edges.emplace_back(cell(q, i, 0), cell(q, i + 1, 0));
        for (NodeId i = 0; i <= m; ++i) {
            for (NodeId j = 0; j <= m; ++j) {
                if (i > 0 && j < m) edges.emplace_back(cell(q, i, j), cell(q, i, j + 1));
                if (j > 0 && i < m) edges.emplace_back(cell(q, i, j), cell(q, i + 1, j));
            }
        }
    }
    return Graph(1 + quadrants * m + quadrants * m * m, edges);
}

Graph glue_gated(const Graph& base, const Graph& piece, Rng& rng) {
    auto base_edges = base.edges();
    auto piece_edges = piece.edges();
    std::vector<NodeId> image(piece.size(), kNoNode);
    const bool along_edge = !base_edges.empty() && !piece_edges.empty() && std::bernoulli_distribution(0.6)(rng);
    Edge shared{kNoNode, kNoNode};
    if (along_edge) {
        Edge b = base_edges[uniform(rng, 0, static_cast<NodeId>(base_edges.size()) - 1)];
        Edge p = piece_edges[uniform(rng, 0, static_cast<NodeId>(piece_edges.size()) - 1)];
        if (std::bernoulli_distribution(0.5)(rng)) std::swap(b.first, b.second);
        image[p.first] = b.first;
        image[p.second] = b.second;
        shared = p;
    } else {
        image[uniform(rng, 0, piece.size() - 1)] = uniform(rng, 0, base.size() - 1);
    }
    NodeId next = base.size();
    for (auto& x : image) {
        if (x == kNoNode) x = next++;
    }
    for (auto [u, v] : piece_edges) {
        if (along_edge && std::minmax(u, v) == std::minmax(shared.first, shared.second)) continue;
        base_edges.emplace_back(image[u], image[v]);
    }
    return Graph(next, base_edges);
}

Graph random_amalgam(int pieces, NodeId max_factor, Rng& rng) {
    auto piece = [&] {
        const NodeId a = uniform(rng, 1, max_factor), b = uniform(rng, 1, max_factor);
        switch (uniform(rng, 0, 3)) {
            case 0: return grid_graph(a, b);
            case 3: return grid_wheel(4 + uniform(rng, 0, 2), std::max<NodeId>(1, std::min(a, b) / 2));
            case 1: return tree_product(random_tree_any(a, rng), random_tree_any(b, rng));
            default: return to_graph(random_tree_any(a * b, rng));
        }
    };
    Graph g = piece();
    for (int i = 1; i < pieces; ++i) g = glue_gated(g, piece(), rng);
    return g;
}

Graph random_connected_graph(NodeId n, std::int64_t extra_edges, Rng& rng) {
    Tree t = random_tree(n, rng, TreeShape::Recursive);
    std::vector<Edge> edges = t.edges();
    std::vector<std::pair<NodeId, NodeId>> seen;
    for (auto [u, v] : edges) seen.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(seen.begin(), seen.end());
    const std::int64_t capacity = static_cast<std::int64_t>(n) * (n - 1) / 2 - (n - 1);
    extra_edges = std::min(extra_edges, capacity);
    for (std::int64_t added = 0; added < extra_edges;) {
        NodeId u = uniform(rng, 0, n - 1);
        NodeId v = uniform(rng, 0, n - 1);
        if (u == v) continue;
        Edge key{std::min(u, v), std::max(u, v)};
        auto it = std::lower_bound(seen.begin(), seen.end(), key);
        if (it != seen.end() && *it == key) continue;
        seen.insert(it, key);
        edges.push_back(key);
        ++added;
    }
    return Graph(n, edges);
}

TreeSystem random_system(int k, NodeId max_tree_size, Rng& rng) {
    std::vector<Tree> trees;
    for (int i = 0; i < k; ++i) {
        trees.push_back(random_tree_any(uniform(rng, 1, max_tree_size), rng));
    }
    return TreeSystem(std::move(trees));
}

PointSet random_points(const TreeSystem& sys, std::size_t count, Rng& rng) {
    PointSet points(sys.k());
    std::vector<NodeId> tuple(sys.k());
    for (std::size_t j = 0; j < count; ++j) {
        for (int i = 0; i < sys.k(); ++i) {
            tuple[i] = uniform(rng, 0, sys.tree(i).size() - 1);
        }
        points.add(tuple);
    }
    return points;
}

Tree bfs_tree(const Graph& g, NodeId root, Rng& rng) {
    auto d = bfs(g, root);
    std::vector<Edge> edges;
    for (NodeId v = 0; v < g.size(); ++v) {
        if (v == root) continue;
        if (d[v] == kUnreached) {
            throw InputError("graph is disconnected");
        }
        std::vector<NodeId> up;
        for (NodeId w : g.neighbors(v)) {
            if (d[w] == d[v] - 1) up.push_back(w);
        }
        edges.emplace_back(up[uniform(rng, 0, static_cast<NodeId>(up.size()) - 1)], v);
    }
    return Tree(g.size(), edges);
}

Tree subdivide_edge(const Tree& t, NodeId u, NodeId v, NodeId extra) {
    std::vector<Edge> edges;
    bool found = false;
    for (auto e : t.edges()) {
        if ((e.first == u && e.second == v) || (e.first == v && e.second == u)) {
            found = true;
            continue;
        }
        edges.push_back(e);
    }
    if (!found) {
        throw InputError("no edge " + std::to_string(u) + "-" + std::to_string(v) + " to subdivide");
    }
    NodeId prev = u;
    for (NodeId j = 0; j < extra; ++j) {
        edges.emplace_back(prev, t.size() + j);
        prev = t.size() + j;
    }
    edges.emplace_back(prev, v);
    return Tree(t.size() + extra, edges);
}

Tree subdivide_all(const Tree& t, NodeId factor) {
    if (factor < 1) {
        throw InputError("subdivision factor must be positive");
    }
    std::vector<Edge> edges;
    NodeId next = t.size();
    for (auto [u, v] : t.edges()) {
        NodeId prev = u;
        for (NodeId j = 1; j < factor; ++j) {
            edges.emplace_back(prev, next);
            prev = next++;
        }
        edges.emplace_back(prev, v);
    }
    return Tree(next, edges);
}

Graph random_split_graph(NodeId clique, NodeId independent, Rng& rng) {
    if (clique < 2) {
        throw InputError("split graph clique needs at least two vertices");
    }
    std::vector<Edge> edges;
    for (NodeId a = 0; a < clique; ++a) {
        for (NodeId b = a + 1; b < clique; ++b) edges.emplace_back(a, b);
    }
    std::vector<NodeId> ks(clique);
    std::iota(ks.begin(), ks.end(), 0);
    for (NodeId j = 0; j < independent; ++j) {
        std::shuffle(ks.begin(), ks.end(), rng);
        NodeId take = uniform(rng, 1, clique - 1);
        for (NodeId t = 0; t < take; ++t) edges.emplace_back(ks[t], clique + j);
    }
    return Graph(clique + independent, edges);
}

Embedding bfs_system_embedding(const Graph& g, const std::vector<NodeId>& roots, Rng& rng) {
    std::vector<Tree> trees;
    for (NodeId r : roots) {
        trees.push_back(bfs_tree(g, r, rng));
    }
    const int k = static_cast<int>(roots.size());
    PointSet points(k);
    std::vector<NodeId> tuple(k);
    for (NodeId x = 0; x < g.size(); ++x) {
        std::fill(tuple.begin(), tuple.end(), x);
        points.add(tuple);
    }
    return {TreeSystem(std::move(trees)), std::move(points), ProductMode::System, Quality::exact()};
}

Embedding split_graph_embedding(const Graph& g, NodeId clique, Rng& rng) {
    std::vector<NodeId> roots(clique);
    std::iota(roots.begin(), roots.end(), 0);
    return bfs_system_embedding(g, roots, rng);
}

Graph cycle_graph(NodeId n) {
    if (n < 3) {
        throw InputError("a cycle needs at least three vertices");
    }
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

Embedding cycle_embedding(NodeId n, int cuts) {
    if (n < 3 || cuts < 1 || cuts > n) {
        throw InputError("cycle embedding needs n >= 3 and 1 <= cuts <= n");
    }
    std::vector<Tree> trees;
    for (int c = 0; c < cuts; ++c) {
        NodeId cut = static_cast<NodeId>(static_cast<std::int64_t>(c) * n / cuts);
        std::vector<Edge> edges;
        for (NodeId v = 0; v < n; ++v) {
            if (v != cut) edges.emplace_back(v, (v + 1) % n);
        }
        trees.emplace_back(n, edges);
    }
    PointSet points(cuts);
    std::vector<NodeId> tuple(cuts);
    for (NodeId x = 0; x < n; ++x) {
        std::fill(tuple.begin(), tuple.end(), x);
        points.add(tuple);
    }
    return {TreeSystem(std::move(trees)), std::move(points), ProductMode::System, Quality::exact()};
}

Embedding product_embedding(std::vector<Tree> factors, ProductMode mode) {
    const int k = static_cast<int>(factors.size());
    PointSet points(k);
    std::vector<NodeId> tuple(k, 0);
    for (bool more = true; more;) {
        points.add(tuple);
        more = false;
        for (int i = k - 1; i >= 0; --i) {
            if (++tuple[i] < factors[i].size()) {
                more = true;
                break;
            }
            tuple[i] = 0;
        }
    }
    return {TreeSystem(std::move(factors)), std::move(points), mode, Quality::exact()};
}

Embedding stretch_embedding(const Embedding& exact, NodeId extra, Rng& rng) {
    std::vector<Tree> trees = exact.system.trees();
    const int touched = exact.mode == ProductMode::Cartesian ? 1 : exact.system.k();
    for (int i = 0; i < touched; ++i) {
        auto edges = trees[i].edges();
        if (edges.empty()) continue;
        auto [u, v] = edges[uniform(rng, 0, static_cast<NodeId>(edges.size()) - 1)];
        trees[i] = subdivide_edge(trees[i], u, v, extra);
    }
    return {TreeSystem(std::move(trees)), exact.points, exact.mode, Quality::stretch(extra)};
}

Embedding distort_embedding(const Embedding& exact) {
    std::vector<Tree> trees = exact.system.trees();
    trees[0] = subdivide_all(trees[0], 2);
    return {TreeSystem(std::move(trees)), exact.points, exact.mode, Quality::distortion(2.0)};
}

}
