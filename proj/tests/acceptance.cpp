// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arbor/bench.hpp"
#include "arbor/centroid.hpp"
#include "arbor/generators.hpp"
#include "arbor/heavy_path.hpp"
#include "arbor/median.hpp"
#include "arbor/odot_ecc.hpp"
#include "arbor/oracle.hpp"
#include "arbor/reductions.hpp"
#include "arbor/subset_ecc.hpp"
#include "arbor/value.hpp"
#include "helpers.hpp"

using namespace arbor;
using namespace testing_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class... Parts>
void require(bool ok, const Parts&... parts) {
    if (!ok) {
        std::ostringstream os;
        (os << ... << parts);
        throw Failed(os.str());
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int floor_log2(std::int64_t n) { return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n))) - 1; }

// every tuple of the product of node sets
std::vector<std::vector<NodeId>> all_tuples(const TreeSystem& sys) {
    std::vector<std::vector<NodeId>> out;
    std::vector<NodeId> cur(sys.k(), 0);
    for (;;) {
        out.push_back(cur);
        int i = 0;
        while (i < sys.k() && ++cur[i] == sys.tree(i).size()) cur[i++] = 0;
        if (i == sys.k()) return out;
    }
}

std::int32_t double_sweep(const Graph& g) {
    auto d0 = bfs(g, 0);
    const auto far = static_cast<NodeId>(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto d1 = bfs(g, far);
    return *std::max_element(d1.begin(), d1.end());
}

std::vector<std::int64_t> metric_ecc(const Embedding& emb) {
    std::vector<std::vector<std::vector<std::int32_t>>> rows(emb.system.k());
    for (int i = 0; i < emb.system.k(); ++i) {
        for (NodeId v = 0; v < emb.system.tree(i).size(); ++v) rows[i].push_back(bfs_distances(emb.system.tree(i), v));
    }
    const Combine op = combine_for(emb.mode);
    std::vector<std::int64_t> e(emb.points.size(), 0);
    for (std::size_t x = 0; x < e.size(); ++x) {
        for (std::size_t y = 0; y < e.size(); ++y) {
            std::int64_t acc = 0;
            for (int i = 0; i < emb.system.k(); ++i) {
                const std::int64_t d = rows[i][emb.points[x][i]][emb.points[y][i]];
                acc = i == 0 ? d : op == Combine::Plus ? acc + d : op == Combine::Min ? std::min(acc, d) : std::max(acc, d);
            }
            e[x] = std::max(e[x], acc);
        }
    }
    return e;
}

// ---------------------------------------------------------------------------

std::string fixture() {
    const ReferenceTable ref;
    Tree t = reference_tree();
    std::vector<double> zero(17, 0.0);
    auto hint = reference_hint();
    const auto start = Clock::now();
    HeavyPathIndex hp(t, 0, zero, hint);
    const double ms = seconds_since(start) * 1e3;
    int cells = 0;
    for (NodeId v = 0; v < 17; ++v) {
        require(hp.path_root(hp.path_of(v)) == ref.path_root[v], "path root of ", v);
        require(hp.offset(v) == ref.offset[v], "offset of ", v);
        require(hp.height(v) == ref.height[v], "height of ", v);
        require(hp.rest_height(v) == ref.rest_height[v], "rest height of ", v);
        std::vector<NodeId> roots;
        for (PathId p : hp.light_paths(v)) roots.push_back(hp.path_root(p));
        require(roots == ref.light_roots[v], "light list of ", v);
        cells += 5;
    }
    require(hp.path_count() == ref.paths.size(), "path count ", hp.path_count());
    for (std::size_t p = 0; p < ref.paths.size(); ++p) {
        require(hp.path(static_cast<PathId>(p)).nodes == ref.paths[p], "nodes of path ", p);
        require(hp.path_height(static_cast<PathId>(p)) == ref.path_height[p], "height of path ", p);
    }
    require(ms < 1.0, "build took ", ms, " ms");
    std::ostringstream os;
    os << cells << " cells, build " << ms << " ms";
    return os.str();
}

std::string odot_equivalence() {
    Rng rng(1001);
    const auto start = Clock::now();
    std::int64_t queries = 0;
    int exhaustive = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int k = 1 + rep % 4;
        // every fourth system is small enough to enumerate all query tuples
        const NodeId small[] = {60, 7, 3, 2};
        TreeSystem sys = random_system(k, rep % 4 == 0 ? small[k - 1] : 200, rng);
        PointSet s = random_points(sys, 1 + rng() % 300, rng);
        auto dist = tree_distances(sys);
        PlusIndex plus(sys, s);
        MinIndex min(sys, s);
        MaxIndex max(sys, s);
        auto check = [&](std::span<const NodeId> v) {
            require(plus.query(v).value == brute_odot(dist, s, v, Combine::Plus), "plus, system ", rep);
            require(min.query(v).value == brute_odot(dist, s, v, Combine::Min), "min, system ", rep);
            require(max.query(v).value == brute_odot(dist, s, v, Combine::Max), "max, system ", rep);
            ++queries;
        };
        std::int64_t tuples = 1;
        for (const Tree& t : sys.trees()) tuples *= t.size();
        if (tuples <= 60) {
            ++exhaustive;
            for (const auto& v : all_tuples(sys)) check(v);
        }
        PointSet probes = random_points(sys, 20, rng);
        for (std::size_t q = 0; q < probes.size(); ++q) check(probes[q]);
    }
    const double sec = seconds_since(start);
    require(sec < 60.0, "took ", sec, " s");
    std::ostringstream os;
    os << "1000 systems, " << queries << " queries x 3 combinations, " << exhaustive << " enumerated, " << sec << " s";
    return os.str();
}

std::string subset_equivalence() {
    Rng rng(1002);
    std::uniform_real_distribution<double> real(-1000.0, 1000.0);
    const auto start = Clock::now();
    std::int64_t queries = 0;
    for (int rep = 0; rep < 500; ++rep) {
        const bool tiny = rep % 5 == 0;
        const NodeId n = 1 + static_cast<NodeId>(rng() % (tiny ? 10 : 2000));
        Tree t = random_tree_any(n, rng);
        std::vector<double> alpha(n);
        const bool holes = rep % 3 == 0;
        for (auto& a : alpha) a = holes && rng() % 3 == 0 ? kNegInf : real(rng);
        SubsetEccIndex idx(t, alpha, static_cast<NodeId>(rng() % n));
        if (n <= 10) {
            std::vector<double> beta_of(n);
            for (auto& b : beta_of) b = real(rng);
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                std::vector<NodeId> U;
                std::vector<double> beta;
                for (NodeId v = 0; v < n; ++v) {
                    if (mask >> v & 1) {
                        U.push_back(v);
                        beta.push_back(beta_of[v]);
                    }
                }
                require(idx.query(U, beta) == brute_subset_ecc(t, alpha, U, beta), "tree ", rep, " mask ", mask);
                ++queries;
            }
            continue;
        }
        for (int q = 0; q < 20; ++q) {
            std::vector<NodeId> U(1 + rng() % 32);
            std::vector<double> beta(U.size());
            for (auto& u : U) u = static_cast<NodeId>(rng() % n);
            for (auto& b : beta) b = real(rng);
            const double got = idx.query(U, beta);
            const double want = brute_subset_ecc(t, alpha, U, beta);
            require(got == want, "tree ", rep, " query ", q, ": ", got, " vs ", want);
            ++queries;
        }
    }
    const double sec = seconds_since(start);
    require(sec < 120.0, "took ", sec, " s");
    std::ostringstream os;
    os << "500 trees, " << queries << " queries, " << sec << " s";
    return os.str();
}

std::string reduction_triangle() {
    Rng rng(1003);
    for (int rep = 0; rep < 200; ++rep) {
        Tree t = random_tree_any(1 + static_cast<NodeId>(rng() % 150), rng);
        std::vector<double> zero(t.size(), 0.0);
        SubsetEccIndex idx(t, zero, static_cast<NodeId>(rng() % t.size()));
        std::vector<NodeId> U(1 + rng() % 4);
        for (auto& u : U) u = static_cast<NodeId>(rng() % t.size());
        std::vector<double> beta(U.size(), 0.0);
        const double brute = brute_subset_ecc(t, zero, U, beta);
        const double tree = idx.query(U, beta);
        const auto via_min = static_cast<double>(subset_ecc_via_min(t, U));
        require(tree == brute && via_min == brute, "instance ", rep, ": ", tree, " / ", via_min, " / ", brute);
    }
    return "200 instances";
}

std::string median_diameter() {
    Rng rng(1004);
    const auto start = Clock::now();
    for (int i = 0; i < 50; ++i) {
        const NodeId r = 1 + static_cast<NodeId>(rng() % 60);
        const NodeId c = i % 2 ? r : 1 + static_cast<NodeId>(rng() % 60);
        Graph g = grid_graph(r, c);
        const std::int32_t got = diameter_cube_free(g);
        require(got == diameter(g), "grid ", r, "x", c);
        if (r == c) {
            require(got == 2 * (r - 1), "square grid ", r);
        }
    }
    std::vector<Graph> products;
    for (int i = 0; i < 100; ++i) {
        const NodeId a = 2 + static_cast<NodeId>(rng() % 99);
        const NodeId b = 1 + static_cast<NodeId>(rng() % (5000 / a));
        products.push_back(tree_product(random_tree_any(a, rng), random_tree_any(b, rng)));
        require(diameter_cube_free(products.back()) == diameter(products.back()), "product ", i);
    }
    for (int i = 0; i < 100; ++i) {
        const Graph& base = products[i];
        Graph g = base.induced(random_gated_subset(base, rng, 1 + static_cast<int>(rng() % 6), 1));
        require(diameter_cube_free(g) == diameter(g), "gated subgraph ", i);
    }
    for (int i = 0; i < 100; ++i) {
        Graph g = to_graph(random_tree_any(1 + static_cast<NodeId>(rng() % 5000), rng));
        require(diameter_cube_free(g) == double_sweep(g), "tree ", i);
    }
    const double sec = seconds_since(start);
    require(sec < 300.0, "took ", sec, " s");
    std::ostringstream os;
    os << "350 graphs, " << sec << " s";
    return os.str();
}

std::string approximation() {
    Rng rng(1005);
    auto exact_instance = [&](int i) {
        if (i % 3 == 2) {
            const NodeId clique = 2 + static_cast<NodeId>(rng() % 5);
            Graph g = random_split_graph(clique, 5 + static_cast<NodeId>(rng() % 40), rng);
            return split_graph_embedding(g, clique, rng);
        }
        Tree a = random_tree_any(2 + rng() % 19, rng), b = random_tree_any(2 + rng() % 19, rng);
        return product_embedding({a, b}, i % 3 ? ProductMode::Cartesian : ProductMode::System);
    };
    for (int i = 0; i < 50; ++i) {
        Embedding exact = exact_instance(i);
        Embedding emb = stretch_embedding(exact, 1 + static_cast<NodeId>(rng() % 4), rng);
        const double beta = emb.quality.amount;
        auto truth = metric_ecc(exact);
        auto rep = ecc_all(emb);
        for (std::size_t x = 0; x < truth.size(); ++x) {
            require(std::abs(rep.estimate[x] - static_cast<double>(truth[x])) <= 2 * beta, "stretch instance ", i,
                    " point ", x);
        }
    }
    for (int i = 0; i < 50; ++i) {
        Embedding exact = exact_instance(i);
        Embedding emb = distort_embedding(exact);
        const double alpha = emb.quality.amount;
        auto truth = metric_ecc(exact);
        auto rep = ecc_all(emb);
        for (std::size_t x = 0; x < truth.size(); ++x) {
            const double e = static_cast<double>(truth[x]);
            const auto raw = static_cast<double>(rep.raw[x]);
            require(e / alpha <= raw && raw <= alpha * e, "distortion instance ", i, " point ", x);
            require(e <= rep.estimate[x] && rep.estimate[x] <= alpha * alpha * e, "distortion instance ", i,
                    " point ", x);
        }
    }
    return "50 stretch and 50 distortion instances";
}

std::string scaling() {
    BenchOptions opt;
    opt.repetitions = 3;
    std::ostringstream os;
    std::string bad;

    auto subset = bench_subset_ecc(13, 18, 16, opt);
    const double build = growth_per_doubling(subset, &BenchRow::build_ns, true);
    const double query = growth_per_doubling(subset, &BenchRow::query_ns, false);
    os << "build/node x" << build << " query x" << query;
    if (build > 1.35) bad += " build";
    if (query > 1.25) bad += " query";

    auto qmax = bench_query_max({1, 2, 4, 8}, 4096, 4096, opt);
    double worst = 0;
    for (const auto& row : qmax) worst = std::max(worst, row.query_ns / (row.k * qmax.front().query_ns));
    os << " query-max t(k)/(k t(1)) <= " << worst;
    if (worst > 2.0) bad += " query-max";

    auto med = bench_median(10, 15, opt);
    const double median = growth_per_doubling(med, &BenchRow::build_ns, false);
    os << " median x" << median;
    if (median > 2.6) bad += " median";

    require(bad.empty(), os.str(), "; over the limit:", bad);
    return os.str();
}

std::string invariants() {
    std::int64_t decompositions = 0, queries = 0;
    Rng rng(1006);
    for (int rep = 0; rep < 60; ++rep) {
        Tree t = random_tree_any(1 + static_cast<NodeId>(rng() % 3000), rng);
        const NodeId n = t.size();
        CentroidIndex cents(t);
        require(cents.depth() <= floor_log2(n) + 1, "centroid depth, tree ", rep);
        std::vector<double> alpha(n);
        for (auto& a : alpha) a = dyadic(rng);
        SubsetEccIndex idx(t, alpha, static_cast<NodeId>(rng() % n));
        require(idx.paths().hp_depth() <= floor_log2(n) + 1, "heavy path depth, tree ", rep);
        for (int q = 0; q < 20; ++q) {
            std::vector<NodeId> U(1 + rng() % 32);
            std::vector<double> beta(U.size());
            for (auto& u : U) u = static_cast<NodeId>(rng() % n);
            for (auto& b : beta) b = dyadic(rng);
            SubsetEccStats stats;
            idx.query(U, beta, &stats);
            for (std::size_t m : stats.level_members) require(m <= 2 * U.size(), "level members, tree ", rep);
            ++queries;
        }
    }

    for (const Graph& g : median_battery(1007, 100, 30)) {
        // recursion as in the diameter computation: decompose, then every fiber
        std::vector<Graph> work{g};
        while (!work.empty()) {
            Graph h = std::move(work.back());
            work.pop_back();
            const NodeId m = h.size();
            if (m < 2) {
                continue;
            }
            StarDecomposition sd = star_decomposition(h, median_centroid(h));
            ++decompositions;
            require(sd.fibers[0].vertices == std::vector<NodeId>{sd.center}, "center fiber");
            std::vector<int> seen(m, 0);
            for (std::size_t f = 0; f < sd.fibers.size(); ++f) {
                const Fiber& fb = sd.fibers[f];
                if (f > 0) {
                    require(2 * fb.vertices.size() <= static_cast<std::size_t>(m), "fiber size");
                }
                for (NodeId v : fb.vertices) {
                    ++seen[v];
                    require(sd.fiber_of[v] == static_cast<std::int32_t>(f), "fiber index");
                }
                if (fb.role == FiberRole::Cone) {
                    require(fb.panels[0] != fb.panels[1], "cone panels");
                    for (auto p : fb.panels) require(sd.fibers[p].role == FiberRole::Panel, "cone neighbor role");
                }
                const PanelBoundary& pb = sd.boundary[f];
                if (!pb.nodes.empty()) {
                    require(pb.tree.size() == static_cast<NodeId>(pb.nodes.size()), "boundary tree size");
                    for (std::size_t i = 0; i < pb.nodes.size(); i += 1 + pb.nodes.size() / 4) {
                        auto dg = bfs(h, pb.nodes[i]);
                        auto dt = bfs_distances(pb.tree, static_cast<NodeId>(i));
                        for (std::size_t j = 0; j < pb.nodes.size(); ++j) {
                            require(dt[j] == dg[pb.nodes[j]], "boundary is not isometric");
                        }
                    }
                }
                for (NodeId v : fb.vertices) require(sd.imprint_count[v] <= 2, "imprint count");
                if (f > 0 && fb.vertices.size() > 1) {
                    work.push_back(h.induced(fb.vertices));
                }
            }
            for (NodeId v = 0; v < m; ++v) require(seen[v] == 1, "fibers do not partition");
        }
    }
    std::ostringstream os;
    os << "60 trees, " << queries << " subset queries, " << decompositions << " star decompositions";
    return os.str();
}

}

int main() {
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    const Criterion criteria[] = {
        {"fixture-exactness", fixture},
        {"odot-oracle-equivalence", odot_equivalence},
        {"subset-ecc-oracle-equivalence", subset_equivalence},
        {"subset-reduction-triangle", reduction_triangle},
        {"median-diameter", median_diameter},
        {"approximation-contracts", approximation},
        {"scaling-shape", scaling},
        {"invariant-suite", invariants},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::string line;
        bool ok = false;
        try {
            line = c.run();
            ok = true;
        } catch (const std::exception& e) {
            line = e.what();
        }
        failures += !ok;
        std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", c.name, line.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
