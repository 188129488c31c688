#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arbor/graph.hpp"
#include "arbor/reductions.hpp"
#include "arbor/tree.hpp"
#include "arbor/tree_system.hpp"

namespace arbor {

using Rng = std::mt19937_64;

enum class TreeShape { Recursive, Prufer, Caterpillar, Deep, Path, Star };

// ids are shuffled so that shape does not leak into the numbering
Tree random_tree(NodeId n, Rng& rng, TreeShape shape = TreeShape::Recursive);
// shape drawn at random, weighted towards the irregular ones
Tree random_tree_any(NodeId n, Rng& rng);
Tree path_tree(NodeId n);
Tree star_tree(NodeId n);

Graph grid_graph(NodeId rows, NodeId cols);
Graph cube_graph();  // the 3-cube
// Cartesian product, vertex (a, b) gets id a * |second| + b
Graph tree_product(const Tree& first, const Tree& second);
// vertex set of a random intersection of halfspaces of a median graph; the
// result is gated and keeps at least `min_size` vertices when possible
std::vector<NodeId> random_gated_subset(const Graph& g, Rng& rng, int rounds, NodeId min_size = 1);
// `quadrants` >= 4 square grids of side `radius` arranged cyclically around
// one vertex (plane grid when quadrants = 4); median and cube-free
Graph grid_wheel(int quadrants, NodeId radius);

// gated amalgam: `piece` glued onto `base` along a vertex or an edge; median
// and cube-free inputs give a median cube-free result
Graph glue_gated(const Graph& base, const Graph& piece, Rng& rng);
// `pieces` grids, grid wheels, tree products and trees glued one after another
Graph random_amalgam(int pieces, NodeId max_factor, Rng& rng);

Graph random_connected_graph(NodeId n, std::int64_t extra_edges, Rng& rng);

TreeSystem random_system(int k, NodeId max_tree_size, Rng& rng);
PointSet random_points(const TreeSystem& sys, std::size_t count, Rng& rng);

// breadth-first spanning tree of a connected graph, ids preserved
Tree bfs_tree(const Graph& g, NodeId root, Rng& rng);
// a tree in which the edge (u, v) is replaced by a path with `extra` new inner nodes
Tree subdivide_edge(const Tree& t, NodeId u, NodeId v, NodeId extra);
// every edge replaced by a path of `factor` edges; original ids preserved
Tree subdivide_all(const Tree& t, NodeId factor);

/*
 * Split graph on a clique K of `clique` vertices (ids 0..clique-1) and
 * `independent` further vertices, each adjacent to a random proper nonempty
 * subset of K, so K stays a maximal clique. Shortest-path trees rooted at the
 * clique vertices embed it exactly.
 */
Graph random_split_graph(NodeId clique, NodeId independent, Rng& rng);
Embedding split_graph_embedding(const Graph& g, NodeId clique, Rng& rng);

// exact embedding of a graph in the shortest-path trees of `roots`; exact only
// when the roots cover every pair, otherwise the distortion is measured
Embedding bfs_system_embedding(const Graph& g, const std::vector<NodeId>& roots, Rng& rng);

// all tuples of the factors, mixed radix with the last factor fastest
Embedding product_embedding(std::vector<Tree> factors, ProductMode mode);

// from an exact embedding: one random edge per tree (only tree 0 for
// Cartesian) becomes a path with `extra` inner nodes; stretch = extra
Embedding stretch_embedding(const Embedding& exact, NodeId extra, Rng& rng);
// from an exact embedding: every edge of tree 0 is doubled; distortion 2
Embedding distort_embedding(const Embedding& exact);

// cycle C_n embedded in `cuts` evenly cut paths (exact for cuts >= 2)
Graph cycle_graph(NodeId n);
Embedding cycle_embedding(NodeId n, int cuts);

}
