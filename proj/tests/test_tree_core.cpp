#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "arbor/cartesian_rmq.hpp"
#include "arbor/centroid.hpp"
#include "arbor/error.hpp"
#include "arbor/generators.hpp"
#include "arbor/heavy_path.hpp"
#include "arbor/tree.hpp"
#include "helpers.hpp"

using namespace arbor;
using namespace testing_support;

namespace {

int floor_log2(NodeId n) { return static_cast<int>(std::floor(std::log2(static_cast<double>(n)))); }

// sizes of the components left after deleting v
std::vector<NodeId> components_without(const Tree& t, NodeId v) {
    std::vector<NodeId> out;
    std::vector<bool> seen(t.size(), false);
    seen[v] = true;
    for (NodeId s : t.neighbors(v)) {
        NodeId count = 0;
        std::vector<NodeId> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            NodeId x = stack.back();
            stack.pop_back();
            ++count;
            for (NodeId y : t.neighbors(x)) {
                if (!seen[y]) {
                    seen[y] = true;
                    stack.push_back(y);
                }
            }
        }
        out.push_back(count);
    }
    return out;
}

}

TEST(BuildTree, ThreeNodePath) {
    std::vector<Edge> e{{0, 1}, {1, 2}};
    Tree t = build_tree(e);
    EXPECT_EQ(t.size(), 3);
    EXPECT_EQ(t.degree(1), 2u);
}

TEST(BuildTree, RejectsDuplicateEdge) {
    std::vector<Edge> e{{0, 1}, {0, 1}};
    try {
        build_tree(e);
        FAIL() << "duplicate edge accepted";
    } catch (const InputError& err) {
        EXPECT_NE(std::string(err.what()).find("duplicate"), std::string::npos) << err.what();
    }
}

TEST(BuildTree, RejectsCycleDisconnectionAndRange) {
    std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 0}};
    EXPECT_THROW(Tree(4, cycle), InputError);
    std::vector<Edge> split{{0, 1}, {2, 3}};
    EXPECT_THROW(Tree(5, split), InputError);
    std::vector<Edge> far{{0, 7}};
    EXPECT_THROW(Tree(2, far), InputError);
    std::vector<Edge> loop{{1, 1}};
    EXPECT_THROW(Tree(2, loop), InputError);
}

TEST(BuildTree, ReferenceTreeHasSeventeenNodes) {
    auto e = reference_edges();
    Tree t = build_tree(e);
    EXPECT_EQ(t.size(), 17);
    EXPECT_EQ(t.edges().size(), 16u);
}

TEST(BfsDistances, PathFromEnd) {
    std::vector<Edge> e{{0, 1}, {1, 2}};
    EXPECT_EQ(bfs_distances(build_tree(e), 0), (std::vector<std::int32_t>{0, 1, 2}));
}

TEST(BfsDistances, ReferenceTreeDeepestNode) {
    auto d = bfs_distances(reference_tree(), 0);
    EXPECT_EQ(d[9], 5);
    EXPECT_EQ(*std::max_element(d.begin(), d.end()), 5);
}

TEST(BfsDistances, MatchesFloydOnRandomTree) {
    Rng rng(11);
    Tree t = random_tree_any(200, rng);
    auto ref = floyd(t);
    for (NodeId s = 0; s < t.size(); s += 7) {
        auto d = bfs_distances(t, s);
        for (NodeId v = 0; v < t.size(); ++v) ASSERT_EQ(d[v], ref[s][v]);
    }
    EXPECT_THROW(bfs_distances(t, 200), InputError);
}

TEST(Centroid, SmallCases) {
    std::vector<Edge> path{{0, 1}, {1, 2}};
    EXPECT_EQ(centroid(build_tree(path)), 1);
    std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    EXPECT_EQ(centroid(build_tree(star)), 0);
    EXPECT_EQ(centroid(Tree()), 0);
}

TEST(Centroid, ComponentBoundOnRandomTrees) {
    Rng rng(12);
    for (int rep = 0; rep < 20; ++rep) {
        Tree t = random_tree_any(500, rng);
        for (NodeId s : components_without(t, centroid(t))) EXPECT_LE(s, t.size() / 2);
    }
}

TEST(CentroidDecomposition, PathOfThree) {
    std::vector<Edge> e{{0, 1}, {1, 2}};
    CentroidIndex idx(build_tree(e));
    EXPECT_EQ(idx.root(), 1);
    auto p = idx.path(0);
    ASSERT_EQ(p.size(), 2u);
    EXPECT_EQ(p[0].centroid, 0);
    EXPECT_EQ(p[1].centroid, 1);
    EXPECT_EQ(p[1].distance, 1);
    EXPECT_EQ(p[1].toward, 0);
}

TEST(CentroidDecomposition, SingleNode) {
    CentroidIndex idx{Tree()};
    ASSERT_EQ(idx.path(0).size(), 1u);
    EXPECT_EQ(idx.path(0)[0].centroid, 0);
    EXPECT_EQ(idx.depth(), 1);
}

TEST(CentroidDecomposition, DepthDistancesAndSeparator) {
    Rng rng(13);
    for (auto shape : {TreeShape::Recursive, TreeShape::Path, TreeShape::Caterpillar, TreeShape::Star,
                       TreeShape::Deep, TreeShape::Prufer}) {
        Tree t = random_tree(1000, rng, shape);
        CentroidIndex idx(t);
        EXPECT_LE(idx.depth(), floor_log2(t.size()) + 1);
        std::vector<std::vector<std::int32_t>> rows(t.size());
        auto row = [&](NodeId v) -> const std::vector<std::int32_t>& {
            if (rows[v].empty()) rows[v] = bfs_distances(t, v);
            return rows[v];
        };
        for (NodeId v = 0; v < t.size(); v += 37) {
            for (const auto& a : idx.path(v)) ASSERT_EQ(a.distance, row(a.centroid)[v]);
        }
        std::uniform_int_distribution<NodeId> node(0, t.size() - 1);
        for (int q = 0; q < 10000; ++q) {
            NodeId s = node(rng), v = node(rng);
            ASSERT_EQ(idx.distance(s, v), row(s)[v]);
        }
    }
}

// the two-column table of paths and per-node fields for the reference tree
TEST(HeavyPath, ReferenceTable) {
    Tree t = reference_tree();
    std::vector<double> zero(17, 0.0);
    auto hint = reference_hint();
    HeavyPathIndex hp(t, 0, zero, hint);
    const ReferenceTable ref;
    for (NodeId v = 0; v < 17; ++v) {
        SCOPED_TRACE(v);
        EXPECT_EQ(hp.path_root(hp.path_of(v)), ref.path_root[v]);
        EXPECT_EQ(hp.offset(v), ref.offset[v]);
        EXPECT_EQ(hp.height(v), ref.height[v]);
        EXPECT_EQ(hp.rest_height(v), ref.rest_height[v]);
        std::vector<NodeId> roots;
        for (PathId p : hp.light_paths(v)) roots.push_back(hp.path_root(p));
        EXPECT_EQ(roots, ref.light_roots[v]);
    }
    ASSERT_EQ(hp.path_count(), ref.paths.size());
    for (std::size_t p = 0; p < ref.paths.size(); ++p) {
        EXPECT_EQ(hp.path(static_cast<PathId>(p)).nodes, ref.paths[p]);
        EXPECT_EQ(hp.path_height(static_cast<PathId>(p)), ref.path_height[p]);
    }
}

TEST(HeavyPath, DefaultTieBreakPrefersLowerId) {
    std::vector<double> zero(17, 0.0);
    HeavyPathIndex hp(reference_tree(), 0, zero);
    EXPECT_EQ(hp.heavy_child(3), 4);
    EXPECT_EQ(hp.heavy_child(11), 12);
}

TEST(HeavyPath, PathOfFour) {
    std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
    std::vector<double> zero(4, 0.0);
    HeavyPathIndex hp(build_tree(e), 0, zero);
    ASSERT_EQ(hp.path_count(), 1u);
    for (NodeId i = 0; i < 4; ++i) {
        EXPECT_EQ(hp.offset(i), i);
        EXPECT_EQ(hp.height(i), 3 - i);
        EXPECT_EQ(hp.rest_height(i), 0);
    }
}

TEST(HeavyPath, HeightsAndStructureOnRandomTrees) {
    Rng rng(14);
    for (int rep = 0; rep < 6; ++rep) {
        Tree t = random_tree_any(2000, rng);
        std::vector<double> alpha(t.size());
        for (auto& a : alpha) a = rep % 3 == 2 && rng() % 4 == 0 ? kNegInf : dyadic(rng) / 2;
        NodeId root = static_cast<NodeId>(rng() % t.size());
        HeavyPathIndex hp(t, root, alpha);
        EXPECT_LE(hp.hp_depth(), floor_log2(t.size()) + 1);

        Rooting r = root_tree(t, root);
        // subtree scan oracle: explicit DFS below v, skipping the heavy child for the rest height
        auto scan = [&](NodeId v, bool skip_heavy) {
            double best = kNegInf;
            std::vector<std::pair<NodeId, int>> stack{{v, 0}};
            while (!stack.empty()) {
                auto [x, d] = stack.back();
                stack.pop_back();
                best = std::max(best, sat_add(alpha[x], d));
                for (NodeId y : t.neighbors(x)) {
                    if (y == r.parent[x] || (skip_heavy && x == v && y == hp.heavy_child(v))) continue;
                    stack.push_back({y, d + 1});
                }
            }
            return best;
        };
        for (NodeId v = 0; v < t.size(); v += 3) {
            ASSERT_EQ(hp.height(v), scan(v, false)) << v;
            ASSERT_EQ(hp.rest_height(v), scan(v, true)) << v;
        }
        for (NodeId v = 0; v < t.size(); ++v) {
            ASSERT_GE(hp.height(v), hp.rest_height(v));
            ASSERT_GE(hp.rest_height(v), alpha[v]);
            NodeId heavy = hp.heavy_child(v);
            for (NodeId y : t.neighbors(v)) {
                if (y != r.parent[v]) {
                    ASSERT_LE(hp.subtree_size(y), hp.subtree_size(heavy));
                }
            }
            auto light = hp.light_paths(v);
            for (std::size_t i = 1; i < light.size(); ++i) {
                ASSERT_GE(hp.path_height(light[i - 1]), hp.path_height(light[i]));
            }
        }
        // path roots at least halve their subtree size per heavy-path level
        for (std::size_t p = 0; p < hp.path_count(); ++p) {
            const auto& path = hp.path(static_cast<PathId>(p));
            if (path.parent_path == kNoPath) continue;
            NodeId father = path.father;
            EXPECT_LE(2 * hp.subtree_size(path.nodes[0]), hp.subtree_size(father));
        }
    }
}

TEST(HeavyPath, RangeArgmaxOnReferencePath) {
    std::vector<double> zero(17, 0.0);
    auto hint = reference_hint();
    HeavyPathIndex hp(reference_tree(), 0, zero, hint);
    // rest heights along the top path are (0,2,1,2,1,0), so the minus sequence
    // is (0,1,-1,-1,-3,-5) and its maximum sits at offset 1
    auto best = hp.range_argmax_minus(0, 0, 5);
    ASSERT_TRUE(best);
    EXPECT_EQ(best->offset, 1);
    EXPECT_EQ(best->value, 1.0);
    auto plus = hp.range_argmax_plus(0, 0, 5);
    ASSERT_TRUE(plus);
    // plus sequence (0,3,3,5,5,5): any of the last three offsets
    EXPECT_GE(plus->offset, 3);
    EXPECT_EQ(plus->value, 5.0);
    EXPECT_FALSE(hp.range_argmax_minus(0, 3, 2));
    EXPECT_THROW(hp.range_argmax_minus(0, 0, 6), InputError);
}

TEST(CartesianRmq, ExhaustiveShortSequences) {
    Rng rng(15);
    for (std::size_t len = 1; len <= 64; ++len) {
        std::vector<double> v(len);
        for (auto& x : v) x = static_cast<double>(rng() % 7);
        CartesianRmq rmq(v);
        for (std::size_t lo = 0; lo < len; ++lo) {
            for (std::size_t hi = lo; hi < len; ++hi) {
                auto at = rmq.range_argmax(lo, hi);
                ASSERT_GE(at, lo);
                ASSERT_LE(at, hi);
                ASSERT_EQ(v[at], *std::max_element(v.begin() + lo, v.begin() + hi + 1));
            }
        }
    }
}

TEST(CartesianRmq, RandomIntervalsOnLongSequences) {
    Rng rng(16);
    for (std::size_t len : {65u, 200u, 1000u, 5000u}) {
        std::vector<double> v(len);
        for (auto& x : v) x = static_cast<double>(rng() % 1000) - 500;
        CartesianRmq rmq(v);
        std::uniform_int_distribution<std::size_t> pos(0, len - 1);
        for (int q = 0; q < 2000; ++q) {
            std::size_t a = pos(rng), b = pos(rng);
            if (a > b) std::swap(a, b);
            auto at = rmq.range_argmax(a, b);
            ASSERT_EQ(v[at], *std::max_element(v.begin() + a, v.begin() + b + 1));
        }
    }
}
