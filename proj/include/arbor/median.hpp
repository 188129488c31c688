#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// every vertex triple has exactly one median; interval bitsets over all
// pairs, so refuses (BudgetError) graphs above `max_vertices`
bool check_median(const Graph& g, NodeId max_vertices = 400);

// no vertex is the corner of a 3-cube
bool check_cube_free(const Graph& g);

/*
 * Vertex minimizing the total distance to all others. Descends from a start
 * vertex towards a neighbor w whenever more than half of the vertices are
 * closer to w; in a median graph the local minimum reached is global.
 */
NodeId median_centroid(const Graph& g);
// reference argmin by one BFS per vertex (lowest id on ties)
NodeId median_centroid_bfs(const Graph& g);

enum class FiberRole { Center, Panel, Cone };

struct Fiber {
    NodeId root;                      // the star vertex whose fiber this is
    FiberRole role;
    std::vector<NodeId> vertices;
    std::int32_t reach = 0;           // max distance from a member to the center
    std::array<std::int32_t, 2> panels{-1, -1};  // cones: the two neighboring panel fibers
};

// per-panel view of its total boundary
struct PanelBoundary {
    std::vector<NodeId> nodes;  // boundary vertices; tree node i is nodes[i]
    Tree tree;
    std::vector<std::int32_t> cones;  // neighboring cone fibers
};

/*
 * Fibers of the star of a centroid c in a cube-free median graph. Every
 * structural property the diameter computation relies on is verified while
 * building; a violation throws InvariantError.
 */
struct StarDecomposition {
    NodeId center = 0;
    std::vector<NodeId> star;
    std::vector<Fiber> fibers;                 // fibers[f].root = star[f]
    std::vector<std::int32_t> fiber_of;        // per vertex
    std::vector<std::int32_t> to_root;         // distance to the root of its fiber
    std::vector<std::int32_t> to_center;       // distance to c
    std::vector<PanelBoundary> boundary;       // indexed by fiber, empty unless a panel
    std::vector<std::int32_t> boundary_index;  // per vertex, tree node id in its panel boundary or -1

    // cone vertices: gate in each of the two neighboring panels and distance to it
    std::vector<std::array<NodeId, 2>> gate;
    std::vector<std::array<std::int32_t, 2>> gate_dist;

    // panel vertices: up to two imprints on the panel boundary with distances
    std::vector<std::array<NodeId, 2>> imprint;
    std::vector<std::array<std::int32_t, 2>> imprint_dist;
    std::vector<std::uint8_t> imprint_count;
};

StarDecomposition star_decomposition(const Graph& g, NodeId center);

/*
 * Distance between vertices of two different fibers, read off the
 * decomposition alone: through the center for separated fibers, through an
 * imprint and a gate for a panel and a neighboring cone, and through both
 * gates for two cones sharing a panel. Checking aid; walks the boundary tree.
 */
std::int32_t fiber_distance(const StarDecomposition& sd, NodeId u, NodeId v);

struct BoundaryEcc {
    double far;          // max over z' of d(z,z') + alpha(z')
    std::int32_t owner;  // the group of a maximizer, -1 when far is -inf
    double far_other;    // same maximum over entries outside that group
};

/*
 * For each node z of a tree whose nodes carry a best weight alpha with group
 * `group` and a runner-up weight alpha2 from a different group (kNegInf when
 * absent), computes the farthest weighted node and the farthest one outside
 * the maximizing group. Two passes: children first, then the complement of
 * every subtree.
 */
std::vector<BoundaryEcc> boundary_dp(const Tree& t, std::span<const double> alpha,
                                     std::span<const std::int32_t> group, std::span<const double> alpha2);

struct LevelBreakdown {
    int depth = 0;
    std::size_t graphs = 0;        // subgraphs processed at this depth
    std::int64_t vertices = 0;     // their total size
    std::int32_t center_ecc = 0;   // maxima of the per-graph candidates
    std::int32_t panels = -1;      // across two panels
    std::int32_t separated = -1;   // separated fibers with a cone
    std::int32_t neighboring = -1; // panel against a neighboring cone
    std::int32_t two_neighboring = -1;
};

struct DiameterReport {
    std::int32_t diameter = 0;
    std::vector<LevelBreakdown> levels;
};

DiameterReport diameter_cube_free_report(const Graph& g);
std::int32_t diameter_cube_free(const Graph& g);

}
