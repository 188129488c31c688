#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arbor/heavy_path.hpp"
#include "arbor/tree.hpp"

namespace arbor {

struct SubsetEccStats {
    int depth = 0;                            // number of heavy-path levels visited
    std::vector<std::size_t> level_members;   // total frame members per level
};

/*
 * Weighted eccentricity of node subsets:
 *
 *   e(U, beta) = max over v of min over u in U of alpha(v) + d(v,u) + beta(u)
 *
 * The query walks the heavy-path tree top down. On each path it locates where
 * the members of U attach, derives the offset distance to U for every path
 * node from those attachment points, answers the unmarked parts of the
 * subtree with range maxima over the path and recurses into every light
 * subtree that contains members, seeded with one extra member standing for
 * everything outside that subtree.
 */
class SubsetEccIndex {
public:
    SubsetEccIndex() = default;
    // alpha finite or kNegInf per node; the tree is rooted at `root`
    SubsetEccIndex(const Tree& tree, std::span<const double> alpha, NodeId root = 0,
                   std::span<const NodeId> heavy_hint = {});

    const HeavyPathIndex& paths() const { return hp_; }
    NodeId size() const { return hp_.size(); }

    // U nonempty, beta[j] finite and belonging to U[j]; repeated nodes keep
    // their smallest beta
    double query(std::span<const NodeId> nodes, std::span<const double> beta,
                 SubsetEccStats* stats = nullptr) const;

private:
    HeavyPathIndex hp_;
};

inline SubsetEccIndex preprocess(const Tree& tree, std::span<const double> alpha) {
    return SubsetEccIndex(tree, alpha);
}

}
