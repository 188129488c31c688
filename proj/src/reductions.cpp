#include "arbor/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "arbor/centroid.hpp"
#include "arbor/error.hpp"

namespace arbor {

Quality Quality::distortion(double alpha) {
    if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
        throw InputError("distortion must be a finite number >= 1");
    }
    return {Kind::Distortion, alpha};
}

Quality Quality::stretch(double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw InputError("stretch must be a finite number >= 0");
    }
    return {Kind::Stretch, beta};
}

Combine combine_for(ProductMode mode) {
    switch (mode) {
        case ProductMode::System: return Combine::Min;
        case ProductMode::Cartesian: return Combine::Plus;
        case ProductMode::Strong: return Combine::Max;
    }
    return Combine::Min;
}

namespace {

std::int64_t fold(Combine op, std::int64_t acc, std::int64_t d) {
    switch (op) {
        case Combine::Plus: return acc + d;
        case Combine::Min: return std::min(acc, d);
        case Combine::Max: return std::max(acc, d);
    }
    return acc;
}

double corrected(const Quality& q, std::int64_t raw) {
    switch (q.kind) {
        case Quality::Kind::Exact: return static_cast<double>(raw);
        case Quality::Kind::Distortion: return q.amount * static_cast<double>(raw);
        case Quality::Kind::Stretch: return static_cast<double>(raw) + q.amount;
    }
    return static_cast<double>(raw);
}

// evaluates query(x) for every point, spreading contiguous blocks over workers
template <typename Fn>
std::vector<std::int64_t> for_all_points(std::size_t n, int jobs, Fn query) {
    std::vector<std::int64_t> out(n);
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t x = 0; x < n; ++x) {
            out[x] = query(x);
        }
        return out;
    }
    std::vector<std::future<void>> tasks;
    for (std::size_t w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t x = w * n / workers; x < (w + 1) * n / workers; ++x) {
                out[x] = query(x);
            }
        }));
    }
    for (auto& t : tasks) {
        t.get();
    }
    return out;
}

}

std::int64_t embedded_distance(const Embedding& emb, std::size_t x, std::size_t y) {
    const Combine op = combine_for(emb.mode);
    std::int64_t acc = 0;
    for (int i = 0; i < emb.system.k(); ++i) {
        auto row = bfs_distances(emb.system.tree(i), emb.points[x][i]);
        std::int64_t d = row[emb.points[y][i]];
        acc = i == 0 ? d : fold(op, acc, d);
    }
    return acc;
}

EccReport ecc_all(const Embedding& emb, const EccOptions& options) {
    check_points(emb.system, emb.points);
    if (emb.points.empty()) {
        throw InputError("an embedding needs at least one point");
    }
    const std::size_t n = emb.points.size();
    const int k = emb.system.k();
    const Combine op = combine_for(emb.mode);
    EccReport report;

    if (op == Combine::Max) {
        MaxIndex index(emb.system, emb.points);
        report.raw = for_all_points(n, options.jobs, [&](std::size_t x) { return index.query(emb.points[x]).value; });
    } else {
        std::vector<CentroidIndex> cents;
        for (const auto& t : emb.system.trees()) {
            cents.emplace_back(t);
        }
        std::int64_t tuples = ancestor_tuple_count(cents, emb.points);
        std::int64_t stored = op == Combine::Min && tuples < options.index_point_budget ? tuples * k : tuples;
        if (stored <= options.index_point_budget) {
            if (op == Combine::Plus) {
                PlusIndex index(emb.system, emb.points);
                report.raw =
                    for_all_points(n, options.jobs, [&](std::size_t x) { return index.query(emb.points[x]).value; });
            } else {
                MinIndex index(emb.system, emb.points);
                report.raw =
                    for_all_points(n, options.jobs, [&](std::size_t x) { return index.query(emb.points[x]).value; });
            }
        } else {
            report.used_index = false;
            report.raw = for_all_points(n, options.jobs, [&](std::size_t x) {
                std::int64_t best = 0;
                for (std::size_t y = 0; y < n; ++y) {
                    std::int64_t acc = 0;
                    for (int i = 0; i < k; ++i) {
                        std::int64_t d = cents[i].distance(emb.points[x][i], emb.points[y][i]);
                        acc = i == 0 ? d : fold(op, acc, d);
                    }
                    best = std::max(best, acc);
                }
                return best;
            });
        }
    }

    report.estimate.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        report.estimate[x] = corrected(emb.quality, report.raw[x]);
    }
    report.raw_diameter = *std::max_element(report.raw.begin(), report.raw.end());
    report.raw_radius = *std::min_element(report.raw.begin(), report.raw.end());
    report.diameter = *std::max_element(report.estimate.begin(), report.estimate.end());
    report.radius = *std::min_element(report.estimate.begin(), report.estimate.end());
    return report;
}

std::int64_t subset_ecc_via_min(const Tree& t, std::span<const NodeId> nodes, std::int64_t point_budget) {
    if (nodes.empty()) {
        throw InputError("the node subset must not be empty");
    }
    const int k = static_cast<int>(nodes.size());
    TreeSystem sys(std::vector<Tree>(k, t));
    PointSet diagonal(k);
    std::vector<NodeId> tuple(k);
    for (NodeId v = 0; v < t.size(); ++v) {
        std::fill(tuple.begin(), tuple.end(), v);
        diagonal.add(tuple);
    }
    std::vector<CentroidIndex> cents(k, CentroidIndex(t));
    const std::int64_t tuples = ancestor_tuple_count(cents, diagonal);
    if (tuples > point_budget / k) {
        throw BudgetError("subset reduction would store " + std::to_string(tuples) + " x " + std::to_string(k) +
                          " points");
    }
    MinIndex index(sys, diagonal);
    return index.query(nodes).value;
}

}
