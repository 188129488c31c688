#include "arbor/median.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "arbor/error.hpp"
#include "arbor/range_tree.hpp"
#include "arbor/subset_ecc.hpp"
#include "arbor/value.hpp"

namespace arbor {

bool check_median(const Graph& g, NodeId max_vertices) {
    const NodeId n = g.size();
    if (n > max_vertices) {
        throw BudgetError("median check limited to " + std::to_string(max_vertices) + " vertices, got " +
                          std::to_string(n));
    }
    if (n == 0 || !g.connected()) {
        return false;
    }
    std::vector<std::vector<std::int32_t>> d(n);
    for (NodeId v = 0; v < n; ++v) {
        d[v] = bfs(g, v);
    }
    const std::size_t words = (n + 63) / 64;
    auto pair_id = [n](NodeId x, NodeId y) { return static_cast<std::size_t>(x) * n + y; };
    std::vector<std::uint64_t> interval(static_cast<std::size_t>(n) * n * words, 0);
    for (NodeId x = 0; x < n; ++x) {
        for (NodeId y = x; y < n; ++y) {
            std::uint64_t* bits = &interval[pair_id(x, y) * words];
            for (NodeId m = 0; m < n; ++m) {
                if (d[x][m] + d[m][y] == d[x][y]) {
                    bits[m / 64] |= std::uint64_t{1} << (m % 64);
                }
            }
        }
    }
    for (NodeId x = 0; x < n; ++x) {
        for (NodeId y = x; y < n; ++y) {
            const std::uint64_t* xy = &interval[pair_id(x, y) * words];
            for (NodeId z = y; z < n; ++z) {
                const std::uint64_t* yz = &interval[pair_id(y, z) * words];
                const std::uint64_t* xz = &interval[pair_id(x, z) * words];
                int count = 0;
                for (std::size_t w = 0; w < words && count < 2; ++w) {
                    count += std::popcount(xy[w] & yz[w] & xz[w]);
                }
                if (count != 1) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_cube_free(const Graph& g) {
    const NodeId n = g.size();
    std::vector<std::vector<NodeId>> via(n);  // corner -> neighbors of x adjacent to it
    std::vector<NodeId> touched;
    for (NodeId x = 0; x < n; ++x) {
        touched.clear();
        for (NodeId a : g.neighbors(x)) {
            for (NodeId p : g.neighbors(a)) {
                if (p == x) continue;
                if (via[p].empty()) touched.push_back(p);
                via[p].push_back(a);
            }
        }
        // squares x-a-p-b, recorded as (a, b, p)
        struct Square {
            NodeId a, b, p;
        };
        std::vector<Square> squares;
        for (NodeId p : touched) {
            const auto& list = via[p];
            for (std::size_t i = 0; i < list.size(); ++i) {
                for (std::size_t j = i + 1; j < list.size(); ++j) {
                    squares.push_back({std::min(list[i], list[j]), std::max(list[i], list[j]), p});
                }
            }
        }
        for (NodeId p : touched) via[p].clear();

        // three pairwise squares on neighbors a<b<e whose far corners share a vertex
        std::sort(squares.begin(), squares.end(),
                  [](const Square& s, const Square& t) { return s.a != t.a ? s.a < t.a : s.b < t.b; });
        for (const auto& ab : squares) {
            for (const auto& be : squares) {
                if (be.a != ab.b) continue;
                for (const auto& ae : squares) {
                    if (ae.a != ab.a || ae.b != be.b) continue;
                    for (NodeId y : g.neighbors(ab.p)) {
                        if (y != ab.a && y != ab.b && g.has_edge(y, be.p) && g.has_edge(y, ae.p)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

namespace {

// BFS order and distances from one source
void bfs_order(const Graph& g, NodeId source, std::vector<std::int32_t>& dist, std::vector<NodeId>& order) {
    dist.assign(g.size(), kUnreached);
    order.clear();
    order.push_back(source);
    dist[source] = 0;
    for (std::size_t h = 0; h < order.size(); ++h) {
        NodeId x = order[h];
        for (NodeId y : g.neighbors(x)) {
            if (dist[y] == kUnreached) {
                dist[y] = dist[x] + 1;
                order.push_back(y);
            }
        }
    }
}

}

NodeId median_centroid(const Graph& g) {
    const NodeId n = g.size();
    if (n == 0) {
        throw InputError("empty graph has no centroid");
    }
    std::vector<std::int32_t> dist;
    std::vector<NodeId> order;
    std::vector<std::uint64_t> mask(n);
    NodeId v = 0;
    for (;;) {
        bfs_order(g, v, dist, order);
        if (static_cast<NodeId>(order.size()) != n) {
            throw InputError("graph is disconnected");
        }
        auto nbrs = g.neighbors(v);
        // |W| for each neighbor w: vertices with a shortest path from v through w
        NodeId next = kNoNode;
        std::int64_t best = n / 2;
        for (std::size_t base = 0; base < nbrs.size(); base += 64) {
            const std::size_t width = std::min<std::size_t>(64, nbrs.size() - base);
            std::vector<std::int64_t> count(width, 0);
            std::fill(mask.begin(), mask.end(), 0);
            for (std::size_t j = 0; j < width; ++j) {
                mask[nbrs[base + j]] = std::uint64_t{1} << j;
            }
            for (std::size_t h = 1; h < order.size(); ++h) {
                NodeId x = order[h];
                if (dist[x] > 1) {
                    for (NodeId p : g.neighbors(x)) {
                        if (dist[p] == dist[x] - 1) mask[x] |= mask[p];
                    }
                }
                for (std::uint64_t bits = mask[x]; bits; bits &= bits - 1) {
                    ++count[std::countr_zero(bits)];
                }
            }
            for (std::size_t j = 0; j < width; ++j) {
                if (count[j] > best) {
                    best = count[j];
                    next = nbrs[base + j];
                }
            }
        }
        if (next == kNoNode) {
            return v;
        }
        v = next;
    }
}

NodeId median_centroid_bfs(const Graph& g) {
    NodeId best = kNoNode;
    std::int64_t best_total = 0;
    for (NodeId v = 0; v < g.size(); ++v) {
        auto d = bfs(g, v);
        std::int64_t total = 0;
        for (auto x : d) {
            if (x == kUnreached) throw InputError("graph is disconnected");
            total += x;
        }
        if (best == kNoNode || total < best_total) {
            best = v;
            best_total = total;
        }
    }
    if (best == kNoNode) {
        throw InputError("empty graph has no centroid");
    }
    return best;
}

StarDecomposition star_decomposition(const Graph& g, NodeId center) {
    const NodeId n = g.size();
    if (center < 0 || center >= n) {
        throw InputError("center " + std::to_string(center) + " is out of range");
    }
    StarDecomposition sd;
    sd.center = center;
    sd.to_center = bfs(g, center);
    if (std::find(sd.to_center.begin(), sd.to_center.end(), kUnreached) != sd.to_center.end()) {
        throw InputError("graph is disconnected");
    }

    // star: center, its neighbors, and the far corners of squares on the center
    std::vector<std::int32_t> corner_hits(n, 0);
    std::vector<std::array<NodeId, 2>> corner_of(n, {kNoNode, kNoNode});
    std::vector<NodeId> cone_roots;
    for (NodeId a : g.neighbors(center)) {
        for (NodeId x : g.neighbors(a)) {
            if (sd.to_center[x] != 2) continue;
            int hits = corner_hits[x]++;
            if (hits < 2) {
                corner_of[x][hits] = a;
            } else {
                throw InvariantError("vertex " + std::to_string(x) + " has three common neighbors with the center " +
                                     std::to_string(center) + " (induced K_{2,3})");
            }
            if (hits == 1) cone_roots.push_back(x);
        }
    }
    std::sort(cone_roots.begin(), cone_roots.end());
    sd.star.push_back(center);
    for (NodeId a : g.neighbors(center)) sd.star.push_back(a);
    sd.star.insert(sd.star.end(), cone_roots.begin(), cone_roots.end());

    sd.fiber_of.assign(n, -1);
    sd.to_root.assign(n, kUnreached);
    std::vector<NodeId> queue;
    for (std::size_t f = 0; f < sd.star.size(); ++f) {
        NodeId s = sd.star[f];
        sd.fiber_of[s] = static_cast<std::int32_t>(f);
        sd.to_root[s] = 0;
        queue.push_back(s);
        FiberRole role = f == 0 ? FiberRole::Center : sd.to_center[s] == 1 ? FiberRole::Panel : FiberRole::Cone;
        sd.fibers.push_back({s, role, {}, 0, {-1, -1}});
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
        NodeId x = queue[h];
        for (NodeId y : g.neighbors(x)) {
            if (sd.to_root[y] == kUnreached) {
                sd.to_root[y] = sd.to_root[x] + 1;
                sd.fiber_of[y] = sd.fiber_of[x];
                queue.push_back(y);
            }
        }
    }
    for (NodeId y = 0; y < n; ++y) {
        for (NodeId p : g.neighbors(y)) {
            if (sd.to_root[p] == sd.to_root[y] - 1 && sd.fiber_of[p] != sd.fiber_of[y]) {
                throw InvariantError("vertex " + std::to_string(y) + " has two gates in the star of " +
                                     std::to_string(center));
            }
        }
        auto& fb = sd.fibers[sd.fiber_of[y]];
        fb.vertices.push_back(y);
        fb.reach = std::max(fb.reach, sd.to_center[y]);
    }
    for (NodeId x : cone_roots) {
        auto& fb = sd.fibers[sd.fiber_of[x]];
        fb.panels = {sd.fiber_of[corner_of[x][0]], sd.fiber_of[corner_of[x][1]]};
        std::sort(fb.panels.begin(), fb.panels.end());
    }

    if (sd.fibers[0].vertices.size() != 1) {
        throw InvariantError("the fiber of the center holds " + std::to_string(sd.fibers[0].vertices.size()) +
                             " vertices");
    }
    for (const auto& fb : sd.fibers) {
        if (2 * fb.vertices.size() > static_cast<std::size_t>(n)) {
            throw InvariantError("fiber of " + std::to_string(fb.root) + " holds " +
                                 std::to_string(fb.vertices.size()) + " of " + std::to_string(n) + " vertices");
        }
    }

    // neighboring fibers are panel-cone pairs; collect total boundaries
    sd.boundary.resize(sd.fibers.size());
    sd.boundary_index.assign(n, -1);
    for (NodeId u = 0; u < n; ++u) {
        const std::int32_t fu = sd.fiber_of[u];
        if (fu == 0) continue;
        for (NodeId v : g.neighbors(u)) {
            const std::int32_t fv = sd.fiber_of[v];
            if (fv == fu || fv == 0) continue;
            const Fiber& a = sd.fibers[fu];
            const Fiber& b = sd.fibers[fv];
            const Fiber& cone = a.role == FiberRole::Cone ? a : b;
            const std::int32_t panel = a.role == FiberRole::Cone ? fv : fu;
            if (a.role == b.role || (cone.panels[0] != panel && cone.panels[1] != panel)) {
                throw InvariantError("fibers of " + std::to_string(a.root) + " and " + std::to_string(b.root) +
                                     " are neighboring but not a cone and one of its panels");
            }
            if (a.role == FiberRole::Panel && sd.boundary_index[u] < 0) {
                sd.boundary_index[u] = static_cast<std::int32_t>(sd.boundary[fu].nodes.size());
                sd.boundary[fu].nodes.push_back(u);
            }
        }
    }
    for (std::size_t f = 0; f < sd.fibers.size(); ++f) {
        const Fiber& fb = sd.fibers[f];
        if (fb.role == FiberRole::Cone) {
            sd.boundary[fb.panels[0]].cones.push_back(static_cast<std::int32_t>(f));
            sd.boundary[fb.panels[1]].cones.push_back(static_cast<std::int32_t>(f));
        }
    }
    for (std::size_t f = 0; f < sd.fibers.size(); ++f) {
        PanelBoundary& pb = sd.boundary[f];
        if (pb.nodes.empty()) continue;
        std::vector<Edge> edges;
        for (NodeId u : pb.nodes) {
            for (NodeId v : g.neighbors(u)) {
                if (u < v && sd.fiber_of[v] == static_cast<std::int32_t>(f) && sd.boundary_index[v] >= 0) {
                    edges.emplace_back(sd.boundary_index[u], sd.boundary_index[v]);
                }
            }
        }
        try {
            pb.tree = Tree(static_cast<NodeId>(pb.nodes.size()), edges);
        } catch (const InputError& e) {
            throw InvariantError("boundary of panel " + std::to_string(sd.fibers[f].root) +
                                 " is not a tree: " + e.what());
        }
    }

    // gates of cone vertices in their panels, by BFS from each panel into its cones
    sd.gate.assign(n, {kNoNode, kNoNode});
    sd.gate_dist.assign(n, {kUnreached, kUnreached});
    std::vector<std::int32_t> stamp(n, -1);
    std::vector<std::int32_t> dist(n, kUnreached);
    std::vector<NodeId> owner(n, kNoNode);
    for (std::size_t f = 0; f < sd.fibers.size(); ++f) {
        const PanelBoundary& pb = sd.boundary[f];
        if (pb.cones.empty()) continue;
        const auto mark = static_cast<std::int32_t>(f);
        queue.clear();
        for (NodeId v : sd.fibers[f].vertices) {
            stamp[v] = mark;
            dist[v] = 0;
            owner[v] = v;
            queue.push_back(v);
        }
        for (std::int32_t y : pb.cones) {
            for (NodeId v : sd.fibers[y].vertices) {
                stamp[v] = mark;
                dist[v] = kUnreached;
            }
        }
        for (std::size_t h = 0; h < queue.size(); ++h) {
            NodeId x = queue[h];
            for (NodeId y : g.neighbors(x)) {
                if (stamp[y] == mark && dist[y] == kUnreached) {
                    dist[y] = dist[x] + 1;
                    owner[y] = owner[x];
                    queue.push_back(y);
                } else if (stamp[y] == mark && dist[y] == dist[x] + 1 && owner[y] != owner[x]) {
                    throw InvariantError("vertex " + std::to_string(y) + " has two gates in the panel of " +
                                         std::to_string(sd.fibers[f].root));
                }
            }
        }
        for (std::int32_t y : pb.cones) {
            const int slot = sd.fibers[y].panels[0] == mark ? 0 : 1;
            for (NodeId v : sd.fibers[y].vertices) {
                if (dist[v] == kUnreached || sd.boundary_index[owner[v]] < 0) {
                    throw InvariantError("cone vertex " + std::to_string(v) + " has no gate on the boundary of " +
                                         std::to_string(sd.fibers[f].root));
                }
                sd.gate[v][slot] = owner[v];
                sd.gate_dist[v][slot] = dist[v];
            }
        }
    }

    // imprints of panel vertices on their boundary tree
    sd.imprint.assign(n, {kNoNode, kNoNode});
    sd.imprint_dist.assign(n, {kUnreached, kUnreached});
    sd.imprint_count.assign(n, 0);
    std::fill(stamp.begin(), stamp.end(), -1);
    std::int32_t round = 0;
    for (std::size_t f = 0; f < sd.fibers.size(); ++f) {
        const PanelBoundary& pb = sd.boundary[f];
        if (pb.nodes.empty()) continue;
        for (NodeId u : sd.fibers[f].vertices) {
            if (sd.boundary_index[u] >= 0) {
                sd.imprint[u][0] = u;
                sd.imprint_dist[u][0] = 0;
                sd.imprint_count[u] = 1;
                continue;
            }
            // BFS inside the panel until every boundary vertex is reached
            ++round;
            queue.clear();
            queue.push_back(u);
            stamp[u] = round;
            dist[u] = 0;
            std::size_t seen = 0;
            for (std::size_t h = 0; h < queue.size() && seen < pb.nodes.size(); ++h) {
                NodeId x = queue[h];
                for (NodeId y : g.neighbors(x)) {
                    if (stamp[y] != round && sd.fiber_of[y] == static_cast<std::int32_t>(f)) {
                        stamp[y] = round;
                        dist[y] = dist[x] + 1;
                        queue.push_back(y);
                        if (sd.boundary_index[y] >= 0) ++seen;
                    }
                }
            }
            int count = 0;
            for (std::size_t i = 0; i < pb.nodes.size(); ++i) {
                const NodeId a = pb.nodes[i];
                bool blocked = false;
                for (NodeId j : pb.tree.neighbors(static_cast<NodeId>(i))) {
                    if (dist[pb.nodes[j]] == dist[a] - 1) {
                        blocked = true;
                        break;
                    }
                }
                if (blocked) continue;
                if (count == 2) {
                    throw InvariantError("vertex " + std::to_string(u) + " has more than two imprints on the boundary of " +
                                         std::to_string(sd.fibers[f].root));
                }
                sd.imprint[u][count] = a;
                sd.imprint_dist[u][count] = dist[a];
                ++count;
            }
            sd.imprint_count[u] = static_cast<std::uint8_t>(count);
        }
    }
    return sd;
}

namespace {

std::int32_t boundary_distance(const PanelBoundary& pb, NodeId from, NodeId to) {
    std::vector<std::int32_t> d(pb.tree.size(), kUnreached);
    std::vector<NodeId> queue{from};
    d[from] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
        NodeId x = queue[h];
        if (x == to) break;
        for (NodeId y : pb.tree.neighbors(x)) {
            if (d[y] == kUnreached) {
                d[y] = d[x] + 1;
                queue.push_back(y);
            }
        }
    }
    return d[to];
}

}

std::int32_t fiber_distance(const StarDecomposition& sd, NodeId u, NodeId v) {
    std::int32_t fu = sd.fiber_of.at(u), fv = sd.fiber_of.at(v);
    if (fu == fv) {
        throw InputError("vertices " + std::to_string(u) + " and " + std::to_string(v) + " share a fiber");
    }
    const Fiber* a = &sd.fibers[fu];
    const Fiber* b = &sd.fibers[fv];
    if (a->role == FiberRole::Cone && b->role == FiberRole::Panel) {
        std::swap(u, v);
        std::swap(fu, fv);
        std::swap(a, b);
    }
    const std::int32_t through_center = sd.to_center[u] + sd.to_center[v];
    if (a->role == FiberRole::Panel && b->role == FiberRole::Cone) {
        if (b->panels[0] != fu && b->panels[1] != fu) return through_center;
        const int slot = b->panels[0] == fu ? 0 : 1;
        const PanelBoundary& pb = sd.boundary[fu];
        const NodeId gate = sd.boundary_index[sd.gate[v][slot]];
        std::int32_t best = kUnreached;
        for (int i = 0; i < sd.imprint_count[u]; ++i) {
            std::int32_t d = sd.imprint_dist[u][i] + boundary_distance(pb, sd.boundary_index[sd.imprint[u][i]], gate) +
                             sd.gate_dist[v][slot];
            if (best == kUnreached || d < best) best = d;
        }
        return best;
    }
    if (a->role == FiberRole::Cone && b->role == FiberRole::Cone) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (a->panels[i] == b->panels[j]) {
                    const PanelBoundary& pb = sd.boundary[a->panels[i]];
                    return sd.gate_dist[u][i] +
                           boundary_distance(pb, sd.boundary_index[sd.gate[u][i]], sd.boundary_index[sd.gate[v][j]]) +
                           sd.gate_dist[v][j];
                }
            }
        }
    }
    return through_center;
}

namespace {

struct Summary {
    double far = kNegInf;
    std::int32_t owner = -1;
    double other = kNegInf;
};

Summary merge(const Summary& a, const Summary& b) {
    if (b.far > a.far) {
        return merge(b, a);
    }
    if (a.owner < 0) {
        return a;
    }
    Summary out = a;
    out.other = std::max(a.other, b.owner != a.owner ? b.far : b.other);
    return out;
}

Summary shifted(Summary s, double by) {
    s.far = sat_add(s.far, by);
    s.other = sat_add(s.other, by);
    return s;
}

}

std::vector<BoundaryEcc> boundary_dp(const Tree& t, std::span<const double> alpha,
                                     std::span<const std::int32_t> group, std::span<const double> alpha2) {
    const NodeId n = t.size();
    if (static_cast<NodeId>(alpha.size()) != n || static_cast<NodeId>(group.size()) != n ||
        static_cast<NodeId>(alpha2.size()) != n) {
        throw InputError("boundary weights must have one entry per tree node");
    }
    std::vector<Summary> own(n);
    for (NodeId z = 0; z < n; ++z) {
        if (alpha[z] != kNegInf) {
            if (group[z] < 0) throw InputError("a weighted boundary node needs a group");
            own[z] = {alpha[z], group[z], alpha2[z]};
        }
    }
    Rooting r = root_tree(t, 0);
    std::vector<Summary> down(n);
    for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
        NodeId z = *it;
        Summary s = own[z];
        for (NodeId w : t.neighbors(z)) {
            if (w != r.parent[z]) s = merge(s, shifted(down[w], 1.0));
        }
        down[z] = s;
    }
    // up[z]: everything outside the subtree of z, seen from z
    std::vector<Summary> up(n);
    std::vector<NodeId> kids;
    std::vector<Summary> prefix;
    for (NodeId z : r.order) {
        kids.clear();
        for (NodeId w : t.neighbors(z)) {
            if (w != r.parent[z]) kids.push_back(w);
        }
        prefix.assign(kids.size() + 1, Summary{});
        prefix[0] = merge(own[z], up[z]);
        for (std::size_t i = 0; i < kids.size(); ++i) {
            prefix[i + 1] = merge(prefix[i], shifted(down[kids[i]], 1.0));
        }
        Summary suffix;
        for (std::size_t i = kids.size(); i-- > 0;) {
            up[kids[i]] = shifted(merge(prefix[i], suffix), 1.0);
            suffix = merge(suffix, shifted(down[kids[i]], 1.0));
        }
    }
    std::vector<BoundaryEcc> out(n);
    for (NodeId z = 0; z < n; ++z) {
        Summary s = merge(down[z], up[z]);
        out[z] = {s.far, s.owner, s.other};
    }
    return out;
}

namespace {

// best weight per boundary node with its cone, and the best from another cone
void add_weight(double value, std::int32_t cone, double& best, std::int32_t& owner, double& other) {
    if (value > best) {
        if (owner != cone) other = best;
        best = value;
        owner = cone;
    } else if (cone != owner && value > other) {
        other = value;
    }
}

void raise(std::int32_t& slot, double value) {
    if (value != kNegInf && value != kPosInf) {
        slot = std::max(slot, static_cast<std::int32_t>(value));
    }
}

}

DiameterReport diameter_cube_free_report(const Graph& input) {
    DiameterReport report;
    struct Job {
        Graph g;
        int depth;
    };
    std::vector<Job> work;
    work.push_back({input, 0});
    while (!work.empty()) {
        Job job = std::move(work.back());
        work.pop_back();
        const Graph& g = job.g;
        const NodeId n = g.size();
        if (static_cast<int>(report.levels.size()) <= job.depth) {
            report.levels.resize(job.depth + 1);
            report.levels[job.depth].depth = job.depth;
        }
        LevelBreakdown& lvl = report.levels[job.depth];
        ++lvl.graphs;
        lvl.vertices += n;
        if (n <= 1) continue;

        const NodeId c = median_centroid(g);
        StarDecomposition sd = star_decomposition(g, c);
        const auto& fibers = sd.fibers;
        lvl.center_ecc = std::max(lvl.center_ecc, *std::max_element(sd.to_center.begin(), sd.to_center.end()));

        // step 1: two different panels
        std::int32_t top1 = -1, top2 = -1;
        for (const auto& fb : fibers) {
            if (fb.role != FiberRole::Panel) continue;
            if (fb.reach > top1) {
                top2 = top1;
                top1 = fb.reach;
            } else if (fb.reach > top2) {
                top2 = fb.reach;
            }
        }
        if (top2 >= 0) lvl.panels = std::max(lvl.panels, top1 + top2);

        // step 2: separated fibers, at least one of them a cone
        std::vector<ValuedPoint> cone_points;
        for (const auto& fb : fibers) {
            if (fb.role == FiberRole::Cone) {
                cone_points.push_back({{fb.panels[0], fb.panels[1]}, static_cast<double>(fb.reach), 0});
            }
        }
        if (!cone_points.empty()) {
            RangeTree rt(cone_points, 2);
            for (std::size_t f = 0; f < fibers.size(); ++f) {
                const Fiber& fb = fibers[f];
                std::optional<RangeHit> hit;
                if (fb.role == FiberRole::Panel) {
                    auto ne = CoordConstraint::not_eq_to(static_cast<Coord>(f));
                    std::array<CoordConstraint, 2> cons{ne, ne};
                    hit = rt.query_constrained(cons);
                } else if (fb.role == FiberRole::Cone) {
                    auto ni = CoordConstraint::not_in(fb.panels[0], fb.panels[1]);
                    std::array<CoordConstraint, 2> cons{ni, ni};
                    hit = rt.query_constrained(cons);
                }
                if (hit) raise(lvl.separated, fb.reach + hit->value);
            }
        }

        // steps 3 and 4, panel by panel
        for (std::size_t f = 0; f < fibers.size(); ++f) {
            const PanelBoundary& pb = sd.boundary[f];
            if (pb.nodes.empty()) continue;
            const auto b = static_cast<std::size_t>(pb.nodes.size());
            std::vector<double> alpha(b, kNegInf), alpha2(b, kNegInf);
            std::vector<std::int32_t> owner(b, -1);
            for (std::int32_t y : pb.cones) {
                const int slot = fibers[y].panels[0] == static_cast<std::int32_t>(f) ? 0 : 1;
                for (NodeId v : fibers[y].vertices) {
                    auto z = sd.boundary_index[sd.gate[v][slot]];
                    add_weight(sd.gate_dist[v][slot], y, alpha[z], owner[z], alpha2[z]);
                }
            }

            SubsetEccIndex index(pb.tree, alpha);
            std::array<NodeId, 2> us;
            std::array<double, 2> betas;
            for (NodeId u : fibers[f].vertices) {
                const int k = sd.imprint_count[u];
                for (int i = 0; i < k; ++i) {
                    us[i] = sd.boundary_index[sd.imprint[u][i]];
                    betas[i] = sd.imprint_dist[u][i];
                }
                raise(lvl.neighboring, index.query(std::span(us.data(), k), std::span(betas.data(), k)));
            }

            auto ecc = boundary_dp(pb.tree, alpha, owner, alpha2);
            for (std::int32_t y : pb.cones) {
                const int slot = fibers[y].panels[0] == static_cast<std::int32_t>(f) ? 0 : 1;
                for (NodeId v : fibers[y].vertices) {
                    const auto& e = ecc[sd.boundary_index[sd.gate[v][slot]]];
                    raise(lvl.two_neighboring, sat_add(e.owner != y ? e.far : e.far_other, sd.gate_dist[v][slot]));
                }
            }
        }

        // step 5: inside each fiber
        for (const auto& fb : fibers) {
            if (fb.vertices.size() > 1) {
                work.push_back({g.induced(fb.vertices), job.depth + 1});
            }
        }
    }
    for (const auto& lvl : report.levels) {
        report.diameter = std::max({report.diameter, lvl.center_ecc, lvl.panels, lvl.separated, lvl.neighboring,
                                    lvl.two_neighboring});
    }
    return report;
}

std::int32_t diameter_cube_free(const Graph& g) { return diameter_cube_free_report(g).diameter; }

}
