#include <gtest/gtest.h>

#include "arbor/error.hpp"
#include "arbor/generators.hpp"
#include "arbor/oracle.hpp"
#include "arbor/reductions.hpp"
#include "arbor/subset_ecc.hpp"
#include "helpers.hpp"

using namespace arbor;
using namespace testing_support;

namespace {

std::vector<int> floyd_ecc(const Graph& g) {
    auto d = floyd(g);
    std::vector<int> e(g.size(), 0);
    for (NodeId v = 0; v < g.size(); ++v) e[v] = *std::max_element(d[v].begin(), d[v].end());
    return e;
}

// eccentricities of the metric an exact embedding realizes
std::vector<std::int64_t> metric_ecc(const Embedding& emb) {
    std::vector<std::int64_t> e(emb.points.size(), 0);
    for (std::size_t x = 0; x < e.size(); ++x)
        for (std::size_t y = 0; y < e.size(); ++y) e[x] = std::max(e[x], embedded_distance(emb, x, y));
    return e;
}

}

TEST(EccAll, BreadthFirstTreesOfARandomGraph) {
    Rng rng(51);
    Graph g = random_connected_graph(30, 25, rng);
    std::vector<NodeId> roots(30);
    for (NodeId i = 0; i < 30; ++i) roots[i] = i;
    Embedding emb = bfs_system_embedding(g, roots, rng);
    ASSERT_EQ(emb.quality.kind, Quality::Kind::Exact);
    auto rep = ecc_all(emb);
    auto ref = floyd_ecc(g);
    for (NodeId v = 0; v < 30; ++v) {
        EXPECT_EQ(rep.raw[v], ref[v]);
        EXPECT_EQ(rep.estimate[v], ref[v]);
    }
    EXPECT_EQ(rep.raw_diameter, *std::max_element(ref.begin(), ref.end()));
    EXPECT_EQ(rep.raw_radius, *std::min_element(ref.begin(), ref.end()));
}

TEST(EccAll, GridAsProductOfPaths) {
    Embedding emb = product_embedding({path_tree(4), path_tree(5)}, ProductMode::Cartesian);
    auto rep = ecc_all(emb);
    EXPECT_EQ(rep.raw[0], 7);
    EXPECT_EQ(rep.raw_diameter, 7);
    EXPECT_EQ(rep.diameter, 7.0);
    auto ref = floyd_ecc(grid_graph(4, 5));
    for (std::size_t v = 0; v < ref.size(); ++v) EXPECT_EQ(rep.raw[v], ref[v]);
}

TEST(EccAll, StrongProductUsesTheLargestCoordinate) {
    Embedding emb = product_embedding({path_tree(4), path_tree(7)}, ProductMode::Strong);
    auto rep = ecc_all(emb);
    for (NodeId a = 0; a < 4; ++a) {
        for (NodeId b = 0; b < 7; ++b) {
            std::int64_t expect = std::max(std::max(a, 3 - a), std::max(b, 6 - b));
            EXPECT_EQ(rep.raw[a * 7 + b], expect);
        }
    }
}

TEST(EccAll, ExactConstructionsMatchBreadthFirstSearch) {
    Rng rng(52);
    for (int rep = 0; rep < 10; ++rep) {
        Graph split = random_split_graph(2 + rep % 5, 10 + rep * 3, rng);
        Embedding se = split_graph_embedding(split, 2 + rep % 5, rng);
        auto got = ecc_all(se).raw;
        auto ref = floyd_ecc(split);
        for (std::size_t v = 0; v < ref.size(); ++v) ASSERT_EQ(got[v], ref[v]);

        const NodeId n = 5 + rep * 4;
        Embedding ce = cycle_embedding(n, 2 + rep % 3);
        auto cyc = ecc_all(ce).raw;
        for (NodeId v = 0; v < n; ++v) ASSERT_EQ(cyc[v], n / 2);
    }
}

TEST(EccAll, StretchStaysWithinTwiceTheBound) {
    Rng rng(53);
    for (int rep = 0; rep < 20; ++rep) {
        Tree a = random_tree_any(3 + rng() % 10, rng), b = random_tree_any(3 + rng() % 10, rng);
        Embedding exact = product_embedding({a, b}, rep % 2 ? ProductMode::Cartesian : ProductMode::System);
        Embedding emb = stretch_embedding(exact, 1 + rep % 3, rng);
        ASSERT_EQ(emb.quality.kind, Quality::Kind::Stretch);
        const double beta = emb.quality.amount;
        auto truth = metric_ecc(exact);
        auto rep_ = ecc_all(emb);
        for (std::size_t x = 0; x < truth.size(); ++x) {
            ASSERT_LE(std::abs(static_cast<double>(rep_.raw[x] - truth[x])), beta);
            ASSERT_LE(std::abs(rep_.estimate[x] - static_cast<double>(truth[x])), 2 * beta);
        }
    }
}

TEST(EccAll, DistortionSandwich) {
    Rng rng(54);
    for (int rep = 0; rep < 20; ++rep) {
        Tree a = random_tree_any(3 + rng() % 10, rng), b = random_tree_any(3 + rng() % 10, rng);
        Embedding exact = product_embedding({a, b}, static_cast<ProductMode>(rep % 3));
        Embedding emb = distort_embedding(exact);
        const double alpha = emb.quality.amount;
        auto truth = metric_ecc(exact);
        auto r = ecc_all(emb);
        for (std::size_t x = 0; x < truth.size(); ++x) {
            const double e = static_cast<double>(truth[x]);
            ASSERT_LE(e / alpha, static_cast<double>(r.raw[x]));
            ASSERT_LE(static_cast<double>(r.raw[x]), alpha * e);
            ASSERT_LE(e, r.estimate[x]);
            ASSERT_LE(r.estimate[x], alpha * alpha * e);
        }
    }
}

TEST(EccAll, PairwiseFallbackAndWorkersAgree) {
    Rng rng(55);
    Graph g = random_connected_graph(60, 40, rng);
    std::vector<NodeId> roots{0, 7, 19, 33};
    Embedding emb = bfs_system_embedding(g, roots, rng);
    auto base = ecc_all(emb);
    EXPECT_TRUE(base.used_index);
    EccOptions tiny;
    tiny.index_point_budget = 1;
    auto slow = ecc_all(emb, tiny);
    EXPECT_FALSE(slow.used_index);
    EccOptions many;
    many.jobs = 4;
    auto par = ecc_all(emb, many);
    EXPECT_EQ(base.raw, slow.raw);
    EXPECT_EQ(base.raw, par.raw);
    auto dist = tree_distances(emb.system);
    for (std::size_t x = 0; x < emb.points.size(); ++x) {
        EXPECT_EQ(base.raw[x], brute_odot(dist, emb.points, emb.points[x], Combine::Min));
    }
}

TEST(Quality, RejectsOutOfRangeAmounts) {
    EXPECT_THROW(Quality::distortion(0.5), InputError);
    EXPECT_THROW(Quality::stretch(-1), InputError);
    EXPECT_NO_THROW(Quality::distortion(1));
    EXPECT_NO_THROW(Quality::stretch(0));
}

TEST(SubsetViaMin, SmallCases) {
    Rng rng(56);
    Tree t = random_tree_any(5, rng);
    std::vector<NodeId> all(5);
    for (NodeId i = 0; i < 5; ++i) all[i] = i;
    EXPECT_EQ(subset_ecc_via_min(t, all), 0);
    // twelve copies of a 12-node tree: far beyond any sane index size
    Tree big = random_tree_any(12, rng);
    std::vector<NodeId> twelve(12);
    for (NodeId i = 0; i < 12; ++i) twelve[i] = i;
    EXPECT_THROW(subset_ecc_via_min(big, twelve, 1'000'000), BudgetError);
    std::vector<NodeId> one{0};
    EXPECT_EQ(subset_ecc_via_min(path_tree(4), one), 3);
}

TEST(SubsetViaMin, AgreesWithTheTreeIndex) {
    Rng rng(57);
    for (int rep = 0; rep < 40; ++rep) {
        Tree t = random_tree_any(2 + rng() % 60, rng);
        std::vector<double> zero(t.size(), 0.0);
        SubsetEccIndex idx(t, zero);
        std::vector<NodeId> U(1 + rng() % 4);
        for (auto& u : U) u = static_cast<NodeId>(rng() % t.size());
        std::vector<double> beta(U.size(), 0.0);
        const double ref = brute_subset_ecc(t, zero, U, beta);
        EXPECT_EQ(static_cast<double>(subset_ecc_via_min(t, U)), ref);
        EXPECT_EQ(idx.query(U, beta), ref);
    }
}
