#include "arbor/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "arbor/generators.hpp"
#include "arbor/median.hpp"
#include "arbor/odot_ecc.hpp"
#include "arbor/subset_ecc.hpp"

namespace arbor {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point start) {
    return std::chrono::duration<double, std::nano>(Clock::now() - start).count();
}

// keeps results observable so the optimizer cannot drop the work
volatile double sink = 0;

}

std::vector<BenchRow> bench_subset_ecc(int log_lo, int log_hi, int subset, const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    Rng rng(opt.seed);
    for (int lg = log_lo; lg <= log_hi; ++lg) {
        const NodeId n = NodeId{1} << lg;
        Tree t = random_tree(n, rng, TreeShape::Recursive);
        std::vector<double> alpha(n);
        std::uniform_int_distribution<int> weight(-64, 64);
        for (auto& a : alpha) a = weight(rng);
        std::uniform_int_distribution<NodeId> node(0, n - 1);
        std::vector<NodeId> nodes(static_cast<std::size_t>(opt.queries) * subset);
        std::vector<double> beta(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            nodes[i] = node(rng);
            beta[i] = weight(rng);
        }

        BenchRow row{"subset-ecc", n, 1, std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            auto start = Clock::now();
            SubsetEccIndex index(t, alpha);
            row.build_ns = std::min(row.build_ns, elapsed_ns(start));
            start = Clock::now();
            double acc = 0;
            for (int q = 0; q < opt.queries; ++q) {
                std::span<const NodeId> u(nodes.data() + static_cast<std::size_t>(q) * subset, subset);
                std::span<const double> b(beta.data() + static_cast<std::size_t>(q) * subset, subset);
                acc += index.query(u, b);
            }
            row.query_ns = std::min(row.query_ns, elapsed_ns(start) / opt.queries);
            sink = acc;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<BenchRow> bench_query_max(const std::vector<int>& ks, int tree_size, int points,
                                      const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    Rng rng(opt.seed);
    for (int k : ks) {
        std::vector<Tree> trees;
        for (int i = 0; i < k; ++i) trees.push_back(random_tree(tree_size, rng, TreeShape::Recursive));
        TreeSystem sys(std::move(trees));
        PointSet s = random_points(sys, points, rng);
        PointSet probes = random_points(sys, opt.queries, rng);

        BenchRow row{"query-max", tree_size, k, std::numeric_limits<double>::infinity(),
                     std::numeric_limits<double>::infinity()};
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            auto start = Clock::now();
            MaxIndex index(sys, s);
            row.build_ns = std::min(row.build_ns, elapsed_ns(start));
            start = Clock::now();
            double acc = 0;
            for (std::size_t q = 0; q < probes.size(); ++q) {
                acc += static_cast<double>(index.query(probes[q]).value);
            }
            row.query_ns = std::min(row.query_ns, elapsed_ns(start) / static_cast<double>(probes.size()));
            sink = acc;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<BenchRow> bench_median(int log_lo, int log_hi, const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    Rng rng(opt.seed);
    for (int lg = log_lo; lg <= log_hi; ++lg) {
        const NodeId a = NodeId{1} << ((lg + 1) / 2);
        const NodeId b = NodeId{1} << (lg / 2);
        Graph g = tree_product(random_tree(a, rng, TreeShape::Recursive), random_tree(b, rng, TreeShape::Recursive));
        BenchRow row{"median", g.size(), 2, std::numeric_limits<double>::infinity(), 0};
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            auto start = Clock::now();
            sink = diameter_cube_free(g);
            row.build_ns = std::min(row.build_ns, elapsed_ns(start));
        }
        rows.push_back(row);
    }
    return rows;
}

double growth_per_doubling(const std::vector<BenchRow>& rows, double BenchRow::*value, bool per_node) {
    if (rows.size() < 2) return 1.0;
    const BenchRow& first = rows.front();
    const BenchRow& last = rows.back();
    const double doublings = std::log2(static_cast<double>(last.n) / static_cast<double>(first.n));
    double ratio = last.*value / first.*value;
    if (per_node) ratio *= static_cast<double>(first.n) / static_cast<double>(last.n);
    return std::pow(ratio, 1.0 / doublings);
}

}
