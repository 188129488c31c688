#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "arbor/generators.hpp"
#include "arbor/graph.hpp"
#include "arbor/tree.hpp"

namespace testing_support {

using arbor::Edge;
using arbor::NodeId;

inline std::vector<Edge> reference_edges() {
    return {{0, 1}, {1, 2}, {2, 3},  {3, 7},   {7, 9},   {3, 4},   {4, 5},   {4, 6},
            {7, 8}, {2, 10}, {1, 11}, {11, 13}, {11, 12}, {11, 14}, {1, 15}, {15, 16}};
}

inline arbor::Tree reference_tree() {
    auto e = reference_edges();
    return arbor::Tree(17, e);
}

// heavy children on the two-way ties of the reference tree
inline std::vector<NodeId> reference_hint() {
    std::vector<NodeId> hint(17, arbor::kNoNode);
    hint[3] = 7;
    hint[4] = 6;
    hint[7] = 9;
    hint[11] = 13;
    return hint;
}

// expected heavy-path fields of the reference tree under reference_hint(),
// zero weights, rooted at 0
struct ReferenceTable {
    NodeId path_root[17] = {0, 0, 0, 0, 4, 5, 4, 0, 8, 0, 10, 11, 12, 11, 14, 15, 15};
    int offset[17] = {0, 1, 2, 3, 0, 0, 1, 4, 0, 5, 0, 0, 0, 1, 0, 0, 1};
    double height[17] = {5, 4, 3, 2, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0};
    double rest_height[17] = {0, 2, 1, 2, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0};
    // roots of the light paths hanging from each node, in list order
    std::vector<std::vector<NodeId>> light_roots = {{}, {11, 15}, {10}, {4}, {5}, {}, {}, {8}, {},
                                                    {}, {},       {12, 14}, {}, {}, {}, {}, {}};
    std::vector<std::vector<NodeId>> paths = {{0, 1, 2, 3, 7, 9}, {4, 6}, {5},  {8},    {10},
                                              {11, 13},           {12},   {14}, {15, 16}};
    double path_height[9] = {5, 1, 0, 0, 0, 1, 0, 0, 1};
};

// median graphs from every generator family, fixed seed
inline std::vector<arbor::Graph> median_battery(std::uint64_t seed, int count, NodeId max_factor) {
    using namespace arbor;
    Rng rng(seed);
    std::vector<Graph> out;
    for (int i = 0; i < count; ++i) {
        const NodeId a = 1 + static_cast<NodeId>(rng() % max_factor);
        const NodeId b = 1 + static_cast<NodeId>(rng() % max_factor);
        switch (i % 5) {
            case 0: out.push_back(grid_graph(a, b)); break;
            case 1: out.push_back(to_graph(random_tree_any(a * b, rng))); break;
            case 2: out.push_back(tree_product(random_tree_any(a, rng), random_tree_any(b, rng))); break;
            case 3: {
                Graph g = tree_product(random_tree_any(a, rng), random_tree_any(b, rng));
                out.push_back(g.induced(random_gated_subset(g, rng, 1 + static_cast<int>(rng() % 5), 1)));
                break;
            }
            default: out.push_back(random_amalgam(2 + static_cast<int>(rng() % 5), max_factor / 2 + 1, rng));
        }
    }
    return out;
}

constexpr int kFar = std::numeric_limits<int>::max() / 4;

// Floyd-Warshall over an explicit edge list; independent of the library's BFS
inline std::vector<std::vector<int>> floyd(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kFar));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (auto [u, v] : edges) d[u][v] = d[v][u] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

inline std::vector<std::vector<int>> floyd(const arbor::Tree& t) { return floyd(t.size(), t.edges()); }
inline std::vector<std::vector<int>> floyd(const arbor::Graph& g) { return floyd(g.size(), g.edges()); }

// multiples of 1/1024 in [-10, 10]; sums of a few stay exact in a double
inline double dyadic(std::mt19937_64& rng) {
    return static_cast<double>(std::uniform_int_distribution<int>(-10240, 10240)(rng)) / 1024.0;
}

}
