#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/odot_ecc.hpp"
#include "arbor/tree.hpp"
#include "arbor/tree_system.hpp"

namespace arbor {

/*
 * Brute-force references. Each routine estimates its work up front and throws
 * BudgetError when the estimate exceeds `budget` elementary steps.
 */
inline constexpr std::int64_t kDefaultBudget = 4'000'000'000;

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(NodeId n, std::vector<std::int32_t> cells) : n_(n), cells_(std::move(cells)) {}

    NodeId size() const { return n_; }
    std::int32_t at(NodeId u, NodeId v) const { return cells_[static_cast<std::size_t>(u) * n_ + v]; }
    std::span<const std::int32_t> row(NodeId u) const {
        return {cells_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)};
    }

private:
    NodeId n_ = 0;
    std::vector<std::int32_t> cells_;
};

// one BFS per vertex; unreachable pairs hold kUnreached
DistanceMatrix apsp(const Graph& g, std::int64_t budget = kDefaultBudget);

// all values via one BFS per vertex without storing the matrix; the graph
// must be connected
std::vector<std::int32_t> eccentricities(const Graph& g, std::int64_t budget = kDefaultBudget);
std::int32_t diameter(const Graph& g, std::int64_t budget = kDefaultBudget);
std::int32_t radius(const Graph& g, std::int64_t budget = kDefaultBudget);

// per-tree distance matrices of a system
std::vector<DistanceMatrix> tree_distances(const TreeSystem& sys, std::int64_t budget = kDefaultBudget);

// max over s in S of the combined coordinate distances, by direct scan
std::int64_t brute_odot(const std::vector<DistanceMatrix>& dist, const PointSet& points, std::span<const NodeId> v,
                        Combine op);
std::int64_t brute_odot(const TreeSystem& sys, const PointSet& points, std::span<const NodeId> v, Combine op);

// max over v of min over j of alpha(v) + d(v, U[j]) + beta[j], evaluated
// exactly and rounded once
double brute_subset_ecc(const Tree& t, std::span<const double> alpha, std::span<const NodeId> nodes,
                        std::span<const double> beta, std::int64_t budget = kDefaultBudget);

/*
 * Boundary vertices a of `region` such that no other boundary vertex lies on
 * a shortest path from u to a. Distances are taken inside `region`, which
 * callers pass as a convex (hence distance-preserving) subgraph.
 */
std::vector<NodeId> brute_imprints(const Graph& region, std::span<const NodeId> boundary, NodeId u);

}
