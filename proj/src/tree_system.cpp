#include "arbor/tree_system.hpp"

#include <string>

#include "arbor/error.hpp"

namespace arbor {

TreeSystem::TreeSystem(std::vector<Tree> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) {
        throw InputError("a tree system needs at least one tree");
    }
    for (const auto& t : trees_) {
        total_ += t.size();
    }
}

void TreeSystem::check_point(std::span<const NodeId> point) const {
    if (static_cast<int>(point.size()) != k()) {
        throw InputError("point has " + std::to_string(point.size()) + " coordinates, system has " +
                         std::to_string(k()) + " trees");
    }
    for (int i = 0; i < k(); ++i) {
        if (!trees_[i].contains(point[i])) {
            throw InputError("coordinate " + std::to_string(i) + " = " + std::to_string(point[i]) +
                             " is not a node of tree " + std::to_string(i));
        }
    }
}

PointSet::PointSet(int k, std::vector<NodeId> flat) : k_(k), ids_(std::move(flat)) {
    if (k_ < 1 || ids_.size() % k_ != 0) {
        throw InputError("point set storage is not a whole number of " + std::to_string(k_) + "-tuples");
    }
}

void PointSet::add(std::span<const NodeId> point) {
    if (static_cast<int>(point.size()) != k_) {
        throw InputError("point arity " + std::to_string(point.size()) + " differs from " + std::to_string(k_));
    }
    ids_.insert(ids_.end(), point.begin(), point.end());
}

void check_points(const TreeSystem& sys, const PointSet& points) {
    if (points.k() != sys.k()) {
        throw InputError("point set arity " + std::to_string(points.k()) + " differs from system size " +
                         std::to_string(sys.k()));
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
        sys.check_point(points[j]);
    }
}

}
