#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "arbor/odot_ecc.hpp"
#include "arbor/tree.hpp"
#include "arbor/tree_system.hpp"

namespace arbor {

// how the per-tree distances of an embedded pair combine
enum class ProductMode { System, Cartesian, Strong };

struct Quality {
    enum class Kind { Exact, Distortion, Stretch };
    Kind kind = Kind::Exact;
    double amount = 0.0;  // alpha >= 1 for distortion, beta >= 0 for stretch

    static Quality exact() { return {}; }
    static Quality distortion(double alpha);
    static Quality stretch(double beta);
};

// images of the n points of a finite metric space, one k-tuple per point
struct Embedding {
    TreeSystem system;
    PointSet points;
    ProductMode mode = ProductMode::System;
    Quality quality;
};

Combine combine_for(ProductMode mode);

// embedded distance between two tuples, straight from per-tree BFS rows
std::int64_t embedded_distance(const Embedding& emb, std::size_t x, std::size_t y);

struct EccOptions {
    // above this many stored index points, min and plus fall back to
    // evaluating the embedded distances pairwise through centroid paths
    std::int64_t index_point_budget = 30'000'000;
    int jobs = 1;
};

struct EccReport {
    std::vector<std::int64_t> raw;   // eccentricity inside the embedding
    std::vector<double> estimate;    // corrected for the embedding quality
    std::int64_t raw_diameter = 0;
    std::int64_t raw_radius = 0;
    double diameter = 0.0;           // max / min of the estimates
    double radius = 0.0;
    bool used_index = true;
};

EccReport ecc_all(const Embedding& emb, const EccOptions& options = {});

// eccentricity max_v min_{u in U} d(v,u) of a node subset, through the
// min-index over |U| copies of the tree with the diagonal as point set; the
// index grows exponentially in |U|, so throws BudgetError once the stored
// point count would pass `point_budget`
std::int64_t subset_ecc_via_min(const Tree& t, std::span<const NodeId> nodes,
                                std::int64_t point_budget = 30'000'000);

}
