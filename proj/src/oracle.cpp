#include "arbor/oracle.hpp"

#include <algorithm>
#include <string>

#include "arbor/error.hpp"
#include "arbor/exact_sum.hpp"

namespace arbor {

namespace {

void charge(std::int64_t work, std::int64_t budget, const char* what) {
    if (work > budget) {
        throw BudgetError(std::string(what) + " needs about " + std::to_string(work) + " steps, budget is " +
                          std::to_string(budget));
    }
}

std::int64_t bfs_all_cost(const Graph& g) {
    return static_cast<std::int64_t>(g.size()) * (g.size() + 2 * static_cast<std::int64_t>(g.edge_count()));
}

}

DistanceMatrix apsp(const Graph& g, std::int64_t budget) {
    charge(bfs_all_cost(g), budget, "apsp");
    const NodeId n = g.size();
    std::vector<std::int32_t> cells(static_cast<std::size_t>(n) * n);
    for (NodeId u = 0; u < n; ++u) {
        auto d = bfs(g, u);
        std::copy(d.begin(), d.end(), cells.begin() + static_cast<std::size_t>(u) * n);
    }
    return {n, std::move(cells)};
}

std::vector<std::int32_t> eccentricities(const Graph& g, std::int64_t budget) {
    charge(bfs_all_cost(g), budget, "eccentricities");
    std::vector<std::int32_t> ecc(g.size());
    for (NodeId u = 0; u < g.size(); ++u) {
        auto d = bfs(g, u);
        if (std::find(d.begin(), d.end(), kUnreached) != d.end()) {
            throw InputError("graph is disconnected");
        }
        ecc[u] = *std::max_element(d.begin(), d.end());
    }
    return ecc;
}

std::int32_t diameter(const Graph& g, std::int64_t budget) {
    auto ecc = eccentricities(g, budget);
    return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

std::int32_t radius(const Graph& g, std::int64_t budget) {
    auto ecc = eccentricities(g, budget);
    return ecc.empty() ? 0 : *std::min_element(ecc.begin(), ecc.end());
}

std::vector<DistanceMatrix> tree_distances(const TreeSystem& sys, std::int64_t budget) {
    std::vector<DistanceMatrix> out;
    for (const auto& t : sys.trees()) {
        out.push_back(apsp(to_graph(t), budget));
    }
    return out;
}

std::int64_t brute_odot(const std::vector<DistanceMatrix>& dist, const PointSet& points, std::span<const NodeId> v,
                        Combine op) {
    if (points.empty()) {
        throw InputError("the point set must not be empty");
    }
    const int k = points.k();
    std::int64_t best = -1;
    for (std::size_t j = 0; j < points.size(); ++j) {
        auto s = points[j];
        std::int64_t acc = dist[0].at(v[0], s[0]);
        for (int i = 1; i < k; ++i) {
            std::int64_t d = dist[i].at(v[i], s[i]);
            switch (op) {
                case Combine::Plus: acc += d; break;
                case Combine::Min: acc = std::min(acc, d); break;
                case Combine::Max: acc = std::max(acc, d); break;
            }
        }
        best = std::max(best, acc);
    }
    return best;
}

std::int64_t brute_odot(const TreeSystem& sys, const PointSet& points, std::span<const NodeId> v, Combine op) {
    sys.check_point(v);
    check_points(sys, points);
    if (points.empty()) {
        throw InputError("the point set must not be empty");
    }
    // only rows for v are needed
    std::vector<std::vector<std::int32_t>> rows;
    for (int i = 0; i < sys.k(); ++i) {
        rows.push_back(bfs_distances(sys.tree(i), v[i]));
    }
    std::int64_t best = -1;
    for (std::size_t j = 0; j < points.size(); ++j) {
        auto s = points[j];
        std::int64_t acc = rows[0][s[0]];
        for (int i = 1; i < sys.k(); ++i) {
            std::int64_t d = rows[i][s[i]];
            acc = op == Combine::Plus ? acc + d : op == Combine::Min ? std::min(acc, d) : std::max(acc, d);
        }
        best = std::max(best, acc);
    }
    return best;
}

double brute_subset_ecc(const Tree& t, std::span<const double> alpha, std::span<const NodeId> nodes,
                        std::span<const double> beta, std::int64_t budget) {
    if (nodes.empty() || nodes.size() != beta.size()) {
        throw InputError("subset and beta must be nonempty and of equal length");
    }
    if (static_cast<NodeId>(alpha.size()) != t.size()) {
        throw InputError("alpha must have one entry per node");
    }
    charge(static_cast<std::int64_t>(nodes.size()) * t.size() * 2, budget, "brute_subset_ecc");
    std::vector<ExactSum> reach(t.size(), ExactSum{0.0, kPosInf, 0});
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        auto d = bfs_distances(t, nodes[j]);
        for (NodeId v = 0; v < t.size(); ++v) {
            reach[v] = min(reach[v], ExactSum{0.0, beta[j], d[v]});
        }
    }
    ExactSum best{kNegInf, 0.0, 0};
    for (NodeId v = 0; v < t.size(); ++v) {
        best = max(best, joined(ExactSum{alpha[v], 0.0, 0}, reach[v]));
    }
    return rounded(best);
}

std::vector<NodeId> brute_imprints(const Graph& region, std::span<const NodeId> boundary, NodeId u) {
    auto du = bfs(region, u);
    std::vector<std::vector<std::int32_t>> from;
    for (NodeId a : boundary) {
        from.push_back(bfs(region, a));
    }
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        NodeId a = boundary[i];
        bool blocked = false;
        for (std::size_t j = 0; j < boundary.size() && !blocked; ++j) {
            NodeId b = boundary[j];
            blocked = b != a && du[b] + from[j][a] == du[a];
        }
        if (!blocked) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}
