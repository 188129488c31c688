#include "arbor/subset_ecc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arbor/error.hpp"
#include "arbor/exact_sum.hpp"
#include "arbor/value.hpp"

namespace arbor {

namespace {

// offsets live in the second real part of an ExactSum, node weights in the first
constexpr ExactSum kNone{0.0, kPosInf, 0};

struct Member {
    NodeId node;
    ExactSum beta;
    std::int32_t chain;  // first climb step of an input member, -1 for a stand-in
};

// one heavy path met while climbing from a member to the root
struct Step {
    PathId path;
    std::int32_t offset;
    std::int32_t dist;
};

// members of a frame are pool[first, last)
struct Frame {
    PathId path;
    int level;
    std::uint32_t first;
    std::uint32_t last;
};

// one member seen from the current path
struct Arrival {
    std::int32_t offset;  // where it meets the path
    PathId via;           // light path it climbs out of, kNoPath when on the path
    ExactSum reach;       // distance to the meeting node plus beta
    std::size_t member;
};

// light path holding members, with their best reach
struct Marked {
    PathId path;
    ExactSum down;
    std::size_t first;
    std::size_t last;
};

// attachment node on the path with the members arriving there
struct Projection {
    std::int32_t offset;
    ExactSum on_path = kNone;  // best reach of members sitting on the node
    ExactSum down = kNone;     // best reach over all members arriving here
    std::size_t first;         // arrivals[first, last) belong here
    std::size_t last;
};

}

SubsetEccIndex::SubsetEccIndex(const Tree& tree, std::span<const double> alpha, NodeId root,
                               std::span<const NodeId> heavy_hint)
    : hp_(tree, root, alpha, heavy_hint) {}

double SubsetEccIndex::query(std::span<const NodeId> nodes, std::span<const double> beta,
                             SubsetEccStats* stats) const {
    if (nodes.empty()) {
        throw InputError("the node subset must not be empty");
    }
    if (nodes.size() != beta.size()) {
        throw InputError("beta has " + std::to_string(beta.size()) + " entries for " +
                         std::to_string(nodes.size()) + " nodes");
    }
    std::vector<Member> pool;
    pool.reserve(4 * nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (nodes[j] < 0 || nodes[j] >= hp_.size()) {
            throw InputError("node " + std::to_string(nodes[j]) + " is out of range");
        }
        if (!std::isfinite(beta[j])) {
            throw InputError("beta of node " + std::to_string(nodes[j]) + " must be finite");
        }
        pool.push_back({nodes[j], ExactSum{0.0, beta[j], 0}, -1});
    }
    // repeated nodes keep their smallest offset
    std::sort(pool.begin(), pool.end(), [](const Member& x, const Member& y) {
        return x.node != y.node ? x.node < y.node : x.beta.b < y.beta.b;
    });
    pool.erase(std::unique(pool.begin(), pool.end(), [](const Member& x, const Member& y) { return x.node == y.node; }),
               pool.end());
    // climbs computed once; a frame on heavy-path level L reads step
    // (level of the member's own path) - L
    std::vector<Step> steps;
    for (Member& mb : pool) {
        mb.chain = static_cast<std::int32_t>(steps.size());
        NodeId x = mb.node;
        std::int32_t dist = 0;
        while (true) {
            const PathId p = hp_.path_of(x);
            steps.push_back({p, hp_.offset(x), dist});
            const NodeId up = hp_.path_father(p);
            if (up == kNoNode) {
                break;
            }
            dist += hp_.offset(x) + 1;
            x = up;
        }
    }
    Frame top{hp_.path_of(hp_.root()), 0, 0, static_cast<std::uint32_t>(pool.size())};
    if (stats) {
        *stats = {};
    }

    ExactSum answer{kNegInf, 0.0, 0};
    auto offer = [&](const ExactSum& x) { answer = max(answer, x); };

    std::vector<Frame> work;
    work.push_back(top);
    std::vector<Arrival> arrivals;
    std::vector<Projection> projs;
    std::vector<ExactSum> left, right, delta;
    std::vector<Marked> marked;

    while (!work.empty()) {
        const Frame frame = work.back();
        work.pop_back();
        if (stats) {
            if (static_cast<int>(stats->level_members.size()) <= frame.level) {
                stats->level_members.resize(frame.level + 1, 0);
            }
            stats->level_members[frame.level] += frame.last - frame.first;
            stats->depth = std::max(stats->depth, frame.level + 1);
        }
        const HeavyPath& path = hp_.path(frame.path);
        const auto m = static_cast<std::int32_t>(path.nodes.size());

        arrivals.clear();
        for (std::size_t j = frame.first; j < frame.last; ++j) {
            const Member& mb = pool[j];
            if (mb.chain < 0) {
                arrivals.push_back({hp_.offset(mb.node), kNoPath, mb.beta, j});
                continue;
            }
            const std::int32_t idx = mb.chain + hp_.path_level(steps[mb.chain].path) - frame.level;
            const Step& at = steps[idx];
            if (at.path != frame.path) {
                throw InvariantError("member " + std::to_string(mb.node) + " lies outside the subtree of its frame");
            }
            const PathId via = idx == mb.chain ? kNoPath : steps[idx - 1].path;
            arrivals.push_back({at.offset, via, shifted(mb.beta, at.dist), j});
        }
        std::sort(arrivals.begin(), arrivals.end(), [](const Arrival& a, const Arrival& b) {
            return a.offset != b.offset ? a.offset < b.offset : a.via < b.via;
        });

        projs.clear();
        for (std::size_t a = 0; a < arrivals.size();) {
            Projection p{arrivals[a].offset, kNone, kNone, a, a};
            while (a < arrivals.size() && arrivals[a].offset == p.offset) {
                if (arrivals[a].via == kNoPath) {
                    p.on_path = min(p.on_path, arrivals[a].reach);
                }
                p.down = min(p.down, arrivals[a].reach);
                ++a;
            }
            p.last = a;
            projs.push_back(p);
        }
        const std::size_t s = projs.size();

        // offset distance to the members along the path, from either side
        left.assign(s, kNone);
        right.assign(s, kNone);
        delta.assign(s, kNone);
        for (std::size_t i = 0; i < s; ++i) {
            left[i] = projs[i].down;
            if (i > 0) {
                left[i] = min(left[i], shifted(left[i - 1], projs[i].offset - projs[i - 1].offset));
            }
        }
        for (std::size_t i = s; i-- > 0;) {
            right[i] = projs[i].down;
            if (i + 1 < s) {
                right[i] = min(right[i], shifted(right[i + 1], projs[i + 1].offset - projs[i].offset));
            }
        }
        for (std::size_t i = 0; i < s; ++i) {
            delta[i] = min(left[i], right[i]);
        }

        // path stretches between attachment nodes and beyond the outermost ones
        if (auto best = hp_.range_argmax_minus(frame.path, 0, projs.front().offset - 1)) {
            offer(joined(best->exact, shifted(delta.front(), projs.front().offset)));
        }
        if (auto best = hp_.range_argmax_plus(frame.path, projs.back().offset + 1, m - 1)) {
            offer(joined(best->exact, shifted(delta.back(), -projs.back().offset)));
        }
        for (std::size_t i = 0; i + 1 < s; ++i) {
            const std::int32_t lo = projs[i].offset;
            const std::int32_t hi = projs[i + 1].offset;
            if (hi - lo < 2) {
                continue;
            }
            // offsets t with delta[i] + (t - lo) <= delta[i + 1] + (hi - t) are
            // served through the left node; start from the rounded guess and
            // settle it with exact comparisons
            auto left_wins = [&](std::int32_t t) {
                return !(shifted(delta[i + 1], hi - t) < shifted(delta[i], t - lo));
            };
            const double guess = (rounded(delta[i + 1]) - rounded(delta[i]) + lo + hi) / 2;
            auto split = static_cast<std::int32_t>(
                std::clamp(std::isnan(guess) ? lo : std::floor(guess), static_cast<double>(lo), static_cast<double>(hi)));
            while (split < hi && left_wins(split + 1)) {
                ++split;
            }
            while (split > lo && !left_wins(split)) {
                --split;
            }
            if (auto best = hp_.range_argmax_plus(frame.path, lo + 1, std::min(split, hi - 1))) {
                offer(joined(best->exact, shifted(delta[i], -lo)));
            }
            if (auto best = hp_.range_argmax_minus(frame.path, std::max(split + 1, lo + 1), hi - 1)) {
                offer(joined(best->exact, shifted(delta[i + 1], hi)));
            }
        }

        for (std::size_t i = 0; i < s; ++i) {
            const Projection& p = projs[i];
            const NodeId node = path.nodes[p.offset];
            offer(joined(ExactSum{hp_.alpha(node), 0.0, 0}, delta[i]));

            // light paths holding members, with their best reach
            marked.clear();
            for (std::size_t a = p.first; a < p.last;) {
                if (arrivals[a].via == kNoPath) {
                    ++a;
                    continue;
                }
                Marked mk{arrivals[a].via, kNone, a, a};
                while (a < p.last && arrivals[a].via == mk.path) {
                    mk.down = min(mk.down, arrivals[a].reach);
                    ++a;
                }
                mk.last = a;
                marked.push_back(mk);
            }

            // tallest light subtree without members
            for (PathId q : hp_.light_paths(node)) {
                bool hit = std::any_of(marked.begin(), marked.end(), [q](const Marked& mk) { return mk.path == q; });
                if (!hit) {
                    offer(joined(shifted(hp_.path_height_exact(q), 1), delta[i]));
                    break;
                }
            }
            if (marked.empty()) {
                continue;
            }

            // best reach from outside each marked subtree
            ExactSum along = kNone;
            if (i > 0) {
                along = min(along, shifted(left[i - 1], p.offset - projs[i - 1].offset));
            }
            if (i + 1 < s) {
                along = min(along, shifted(right[i + 1], projs[i + 1].offset - p.offset));
            }
            const ExactSum outside_common = min(p.on_path, along);
            std::size_t top1 = 0;
            for (std::size_t t = 1; t < marked.size(); ++t) {
                if (marked[t].down < marked[top1].down) {
                    top1 = t;
                }
            }
            ExactSum second = kNone;
            for (std::size_t t = 0; t < marked.size(); ++t) {
                if (t != top1) {
                    second = min(second, marked[t].down);
                }
            }
            for (std::size_t t = 0; t < marked.size(); ++t) {
                const Marked& mk = marked[t];
                const ExactSum outside = min(outside_common, t == top1 ? second : marked[top1].down);
                Frame child{mk.path, frame.level + 1, static_cast<std::uint32_t>(pool.size()), 0};
                const NodeId head = hp_.path_root(mk.path);
                bool head_present = false;
                for (std::size_t a = mk.first; a < mk.last; ++a) {
                    Member member = pool[arrivals[a].member];
                    if (member.node == head) {
                        member.beta = min(member.beta, shifted(outside, 1));
                        head_present = true;
                    }
                    pool.push_back(member);
                }
                if (!head_present && outside < kNone) {
                    pool.push_back({head, shifted(outside, 1), -1});
                }
                child.last = static_cast<std::uint32_t>(pool.size());
                work.push_back(child);
            }
        }
    }
    return rounded(answer);
}

}
