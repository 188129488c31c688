#include "arbor/odot_ecc.hpp"

#include <algorithm>
#include <limits>

#include "arbor/error.hpp"
#include "grouped_points.hpp"

namespace arbor {

namespace {

std::vector<CentroidIndex> decompose_all(const TreeSystem& sys) {
    std::vector<CentroidIndex> cents;
    cents.reserve(sys.k());
    for (const auto& t : sys.trees()) {
        cents.emplace_back(t);
    }
    return cents;
}

void check_inputs(const TreeSystem& sys, const PointSet& points) {
    if (points.empty()) {
        throw InputError("the point set must not be empty");
    }
    check_points(sys, points);
}

/*
 * Odometer over the product of the centroid-ancestor paths of a tuple.
 * `pos[i]` indexes into path(i); `advance` returns false after the last tuple.
 */
class AncestorTuples {
public:
    AncestorTuples(const std::vector<CentroidIndex>& cents, std::span<const NodeId> point)
        : pos_(point.size(), 0) {
        paths_.reserve(point.size());
        for (std::size_t i = 0; i < point.size(); ++i) {
            paths_.push_back(cents[i].path(point[i]));
        }
    }

    const CentroidAncestor& at(std::size_t i) const { return paths_[i][pos_[i]]; }

    bool advance() {
        for (std::size_t i = 0; i < pos_.size(); ++i) {
            if (++pos_[i] < paths_[i].size()) {
                return true;
            }
            pos_[i] = 0;
        }
        return false;
    }

private:
    std::vector<std::span<const CentroidAncestor>> paths_;
    std::vector<std::size_t> pos_;
};

CoordConstraint away_from(const CentroidAncestor& a) {
    return a.distance == 0 ? CoordConstraint::any() : CoordConstraint::not_eq_to(a.toward);
}

}

std::int64_t ancestor_tuple_count(const std::vector<CentroidIndex>& cents, const PointSet& points) {
    std::int64_t total = 0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        std::int64_t prod = 1;
        for (int i = 0; i < points.k(); ++i) {
            prod *= static_cast<std::int64_t>(cents[i].path(points[j][i]).size());
            if (prod > std::numeric_limits<std::int64_t>::max() / 64) {
                return std::numeric_limits<std::int64_t>::max();
            }
        }
        total += prod;
        if (total > std::numeric_limits<std::int64_t>::max() / 2) {
            return std::numeric_limits<std::int64_t>::max();
        }
    }
    return total;
}

PlusIndex::PlusIndex(const TreeSystem& sys, const PointSet& points) : sys_(sys) {
    check_inputs(sys, points);
    cents_ = decompose_all(sys);
    const int k = sys.k();
    groups_ = std::make_unique<detail::GroupedPoints>(k, k);
    std::vector<NodeId> key(k);
    std::vector<Coord> coords(k);
    for (std::size_t j = 0; j < points.size(); ++j) {
        AncestorTuples tuples(cents_, points[j]);
        do {
            std::int64_t f = 0;
            for (int i = 0; i < k; ++i) {
                const auto& a = tuples.at(i);
                key[i] = a.centroid;
                coords[i] = a.toward;
                f += a.distance;
            }
            groups_->add(key, coords, static_cast<double>(f), static_cast<std::int64_t>(j));
        } while (tuples.advance());
    }
    groups_->finalize();
}

PlusIndex::PlusIndex(PlusIndex&&) noexcept = default;
PlusIndex::~PlusIndex() = default;

std::size_t PlusIndex::point_count() const { return groups_->size(); }

OdotResult PlusIndex::query(std::span<const NodeId> v) const {
    sys_.check_point(v);
    const int k = sys_.k();
    std::vector<NodeId> key(k);
    std::vector<CoordConstraint> cons(k);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::int64_t witness = -1;
    AncestorTuples tuples(cents_, v);
    do {
        std::int64_t lift = 0;
        for (int i = 0; i < k; ++i) {
            const auto& a = tuples.at(i);
            key[i] = a.centroid;
            cons[i] = away_from(a);
            lift += a.distance;
        }
        if (auto hit = groups_->best(key, cons)) {
            std::int64_t value = static_cast<std::int64_t>(hit->value) + lift;
            if (value > best) {
                best = value;
                witness = hit->payload;
            }
        }
    } while (tuples.advance());
    if (witness < 0) {
        throw InvariantError("no ancestor cell holds a point");
    }
    return {best, static_cast<std::size_t>(witness)};
}

std::vector<std::size_t> PlusIndex::cell_sizes(std::span<const NodeId> v) const {
    sys_.check_point(v);
    const int k = sys_.k();
    std::vector<NodeId> key(k);
    std::vector<CoordConstraint> cons(k);
    std::vector<std::size_t> sizes;
    AncestorTuples tuples(cents_, v);
    do {
        for (int i = 0; i < k; ++i) {
            key[i] = tuples.at(i).centroid;
            cons[i] = away_from(tuples.at(i));
        }
        sizes.push_back(groups_->count(key, cons));
    } while (tuples.advance());
    return sizes;
}

MinIndex::MinIndex(const TreeSystem& sys, const PointSet& points) : sys_(sys) {
    check_inputs(sys, points);
    cents_ = decompose_all(sys);
    const int k = sys.k();
    // key: ancestor tuple then the minimizing coordinate; coords: neighbors
    // towards s, then one distance difference per other coordinate
    groups_ = std::make_unique<detail::GroupedPoints>(k + 1, 2 * k - 1);
    std::vector<NodeId> key(k + 1);
    std::vector<Coord> coords(2 * k - 1);
    std::vector<std::int32_t> d(k);
    for (std::size_t j = 0; j < points.size(); ++j) {
        AncestorTuples tuples(cents_, points[j]);
        do {
            for (int i = 0; i < k; ++i) {
                const auto& a = tuples.at(i);
                key[i] = a.centroid;
                coords[i] = a.toward;
                d[i] = a.distance;
            }
            for (int i = 0; i < k; ++i) {
                key[k] = i;
                int col = k;
                for (int t = 0; t < k; ++t) {
                    if (t != i) {
                        coords[col++] = static_cast<Coord>(d[i]) - d[t];
                    }
                }
                groups_->add(key, coords, static_cast<double>(d[i]), static_cast<std::int64_t>(j));
            }
        } while (tuples.advance());
    }
    groups_->finalize();
}

MinIndex::MinIndex(MinIndex&&) noexcept = default;
MinIndex::~MinIndex() = default;

std::size_t MinIndex::point_count() const { return groups_->size(); }

OdotResult MinIndex::query(std::span<const NodeId> v) const {
    sys_.check_point(v);
    const int k = sys_.k();
    std::vector<NodeId> key(k + 1);
    std::vector<CoordConstraint> cons(2 * k - 1);
    std::vector<std::int32_t> d(k);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::int64_t witness = -1;
    AncestorTuples tuples(cents_, v);
    do {
        for (int i = 0; i < k; ++i) {
            const auto& a = tuples.at(i);
            key[i] = a.centroid;
            cons[i] = away_from(a);
            d[i] = a.distance;
        }
        for (int i = 0; i < k; ++i) {
            key[k] = i;
            int col = k;
            for (int t = 0; t < k; ++t) {
                if (t != i) {
                    cons[col++] = CoordConstraint::at_most(static_cast<Coord>(d[t]) - d[i]);
                }
            }
            if (auto hit = groups_->best(key, cons)) {
                std::int64_t value = static_cast<std::int64_t>(hit->value) + d[i];
                if (value > best) {
                    best = value;
                    witness = hit->payload;
                }
            }
        }
    } while (tuples.advance());
    if (witness < 0) {
        throw InvariantError("no ancestor cell holds a point");
    }
    return {best, static_cast<std::size_t>(witness)};
}

namespace {

// BFS restricted to nodes with keep[v]; unreached nodes stay at -1
std::vector<std::int32_t> bfs_within(const Tree& t, NodeId source, const std::vector<char>& keep) {
    std::vector<std::int32_t> dist(t.size(), -1);
    std::vector<NodeId> queue{source};
    dist[source] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        NodeId x = queue[h];
        for (NodeId y : t.neighbors(x)) {
            if (keep[y] && dist[y] < 0) {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

NodeId farthest(const std::vector<std::int32_t>& dist) {
    return static_cast<NodeId>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

}

MaxIndex::MaxIndex(const TreeSystem& sys, const PointSet& points) : sys_(sys) {
    check_inputs(sys, points);
    trees_.resize(sys.k());
    for (int i = 0; i < sys.k(); ++i) {
        const Tree& t = sys.tree(i);
        const NodeId n = t.size();
        PerTree& pt = trees_[i];
        pt.owner.assign(n, -1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            pt.owner[points[j][i]] = static_cast<std::int64_t>(j);
        }

        // peel leaves outside the projection
        std::vector<char> keep(n, 1);
        std::vector<std::int32_t> deg(n);
        std::vector<NodeId> leaves;
        for (NodeId v = 0; v < n; ++v) {
            deg[v] = static_cast<std::int32_t>(t.degree(v));
            if (deg[v] <= 1 && pt.owner[v] < 0) {
                leaves.push_back(v);
            }
        }
        while (!leaves.empty()) {
            NodeId v = leaves.back();
            leaves.pop_back();
            keep[v] = 0;
            for (NodeId w : t.neighbors(v)) {
                if (keep[w] && --deg[w] == 1 && pt.owner[w] < 0) {
                    leaves.push_back(w);
                }
            }
        }

        // attachment by multi-source BFS from the pruned tree
        pt.attach.assign(n, kNoNode);
        pt.lift.assign(n, 0);
        std::vector<NodeId> queue;
        for (NodeId v = 0; v < n; ++v) {
            if (keep[v]) {
                pt.attach[v] = v;
                queue.push_back(v);
            }
        }
        for (std::size_t h = 0; h < queue.size(); ++h) {
            NodeId x = queue[h];
            for (NodeId y : t.neighbors(x)) {
                if (pt.attach[y] == kNoNode) {
                    pt.attach[y] = pt.attach[x];
                    pt.lift[y] = pt.lift[x] + 1;
                    queue.push_back(y);
                }
            }
        }

        NodeId any = points[0][i];
        pt.end_a = farthest(bfs_within(t, any, keep));
        pt.dist_a = bfs_within(t, pt.end_a, keep);
        pt.end_b = farthest(pt.dist_a);
        pt.dist_b = bfs_within(t, pt.end_b, keep);
    }
}

OdotResult MaxIndex::query(std::span<const NodeId> v) const {
    sys_.check_point(v);
    OdotResult best{std::numeric_limits<std::int64_t>::min(), 0};
    for (int i = 0; i < sys_.k(); ++i) {
        const PerTree& pt = trees_[i];
        NodeId x = pt.attach[v[i]];
        bool to_a = pt.dist_a[x] >= pt.dist_b[x];
        std::int64_t value = pt.lift[v[i]] + (to_a ? pt.dist_a[x] : pt.dist_b[x]);
        if (value > best.value) {
            best = {value, static_cast<std::size_t>(pt.owner[to_a ? pt.end_a : pt.end_b])};
        }
    }
    return best;
}

}
