#include "arbor/range_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "arbor/error.hpp"

namespace arbor {

CoordConstraint CoordConstraint::not_in(Coord a, Coord b) {
    if (a == b) {
        throw InputError("NotIn constraint needs two distinct values");
    }
    return {Kind::NotIn, a, b};
}

bool CoordConstraint::admits(Coord x) const {
    switch (kind) {
        case Kind::Any: return true;
        case Kind::Eq: return x == a;
        case Kind::AtMost: return x <= a;
        case Kind::NotEq: return x != a;
        case Kind::NotIn: return x != a && x != b;
    }
    return false;
}

std::vector<Interval> CoordConstraint::intervals() const {
    // values adjacent to an excluded point; the extremes of Coord stay
    // reserved for the infinite endpoints
    auto below = [](Coord x) { return x == kCoordMin ? kCoordMin : x - 1; };
    auto above = [](Coord x) { return x == kCoordMax ? kCoordMax : x + 1; };
    switch (kind) {
        case Kind::Any: return {Interval{}};
        case Kind::Eq: return {Interval{a, a}};
        case Kind::AtMost: return {Interval{kCoordMin, a}};
        case Kind::NotEq: return {Interval{kCoordMin, below(a)}, Interval{above(a), kCoordMax}};
        case Kind::NotIn: {
            Coord lo = std::min(a, b);
            Coord hi = std::max(a, b);
            return {Interval{kCoordMin, below(lo)}, Interval{above(lo), below(hi)}, Interval{above(hi), kCoordMax}};
        }
    }
    return {};
}

std::vector<std::vector<Interval>> expand_constraints(std::span<const CoordConstraint> cons) {
    std::vector<std::vector<Interval>> boxes{{}};
    for (const auto& c : cons) {
        auto parts = c.intervals();
        std::vector<std::vector<Interval>> next;
        next.reserve(boxes.size() * parts.size());
        for (const auto& box : boxes) {
            for (const auto& part : parts) {
                next.push_back(box);
                next.back().push_back(part);
            }
        }
        boxes = std::move(next);
    }
    return boxes;
}

struct RangeTree::Level {
    struct Node {
        std::uint32_t lo;
        std::uint32_t hi;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::unique_ptr<Level> sub;  // null for buckets
    };

    int dim = 0;
    std::vector<std::uint32_t> ids;  // sorted by coordinate `dim`
    std::vector<Coord> keys;
    std::vector<Node> nodes;         // nodes[0] is the root when not last
    std::vector<std::uint32_t> seg;  // last coordinate: segment tree of best positions
};

RangeTree::RangeTree() = default;
RangeTree::RangeTree(RangeTree&&) noexcept = default;
RangeTree& RangeTree::operator=(RangeTree&&) noexcept = default;
RangeTree::~RangeTree() = default;

RangeTree::RangeTree(std::span<const ValuedPoint> points, int dimension) : dim_(dimension) {
    if (dimension < 1) {
        throw InputError("range tree dimension must be positive");
    }
    coords_.reserve(points.size() * dimension);
    for (const auto& p : points) {
        if (static_cast<int>(p.coords.size()) != dimension) {
            throw InputError("point has " + std::to_string(p.coords.size()) + " coordinates, expected " +
                             std::to_string(dimension));
        }
        coords_.insert(coords_.end(), p.coords.begin(), p.coords.end());
        values_.push_back(p.value);
        payloads_.push_back(p.payload);
    }
    build();
}

RangeTree::RangeTree(int dimension, std::vector<Coord> coords, std::vector<double> values,
                     std::vector<std::int64_t> payloads)
    : dim_(dimension), coords_(std::move(coords)), values_(std::move(values)), payloads_(std::move(payloads)) {
    if (dimension < 1) {
        throw InputError("range tree dimension must be positive");
    }
    if (coords_.size() != values_.size() * dimension || payloads_.size() != values_.size()) {
        throw InputError("range tree point arrays disagree on dimension or count");
    }
    build();
}

void RangeTree::build() {
    for (double v : values_) {
        if (std::isnan(v)) {
            throw InputError("range tree values must not be NaN");
        }
    }
    std::vector<std::uint32_t> ids(values_.size());
    for (std::uint32_t i = 0; i < ids.size(); ++i) {
        ids[i] = i;
    }
    root_ = build_level(0, std::move(ids));
}

std::unique_ptr<RangeTree::Level> RangeTree::build_level(int d, std::vector<std::uint32_t> ids) const {
    auto level = std::make_unique<Level>();
    level->dim = d;
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) { return coord(a, d) < coord(b, d); });
    level->keys.resize(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        level->keys[i] = coord(ids[i], d);
    }
    level->ids = std::move(ids);
    const std::size_t m = level->ids.size();

    if (d == dim_ - 1) {
        level->seg.assign(2 * m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            level->seg[m + i] = static_cast<std::uint32_t>(i);
        }
        for (std::size_t i = m; i-- > 1;) {
            std::uint32_t a = level->seg[2 * i];
            std::uint32_t b = level->seg[2 * i + 1];
            level->seg[i] = values_[level->ids[b]] > values_[level->ids[a]] ? b : a;
        }
        return level;
    }
    if (m == 0) {
        return level;
    }
    // explicit stack so deep levels do not recurse on the C++ stack
    level->nodes.push_back({0, static_cast<std::uint32_t>(m), -1, -1, nullptr});
    for (std::size_t i = 0; i < level->nodes.size(); ++i) {
        auto lo = level->nodes[i].lo;
        auto hi = level->nodes[i].hi;
        if (hi - lo <= kBucket) {
            continue;
        }
        std::vector<std::uint32_t> part(level->ids.begin() + lo, level->ids.begin() + hi);
        level->nodes[i].sub = build_level(d + 1, std::move(part));
        std::uint32_t mid = lo + (hi - lo) / 2;
        level->nodes[i].left = static_cast<std::int32_t>(level->nodes.size());
        level->nodes.push_back({lo, mid, -1, -1, nullptr});
        level->nodes[i].right = static_cast<std::int32_t>(level->nodes.size());
        level->nodes.push_back({mid, hi, -1, -1, nullptr});
    }
    return level;
}

void RangeTree::offer(std::uint32_t id, std::int64_t& best) const {
    if (best < 0 || values_[id] > values_[best]) {
        best = id;
    }
}

void RangeTree::scan(const Level& level, std::size_t from, std::size_t to, std::span<const Interval> box,
                     std::int64_t& best) const {
    for (std::size_t i = from; i < to; ++i) {
        std::uint32_t id = level.ids[i];
        bool inside = true;
        for (int d = level.dim + 1; d < dim_ && inside; ++d) {
            inside = box[d].contains(coord(id, d));
        }
        if (inside) {
            offer(id, best);
        }
    }
}

void RangeTree::query_level(const Level& level, std::span<const Interval> box, std::int64_t& best) const {
    const Interval& iv = box[level.dim];
    if (iv.lo > iv.hi) {
        return;
    }
    const std::size_t a = std::lower_bound(level.keys.begin(), level.keys.end(), iv.lo) - level.keys.begin();
    const std::size_t b = std::upper_bound(level.keys.begin(), level.keys.end(), iv.hi) - level.keys.begin();
    if (a >= b) {
        return;
    }
    if (level.dim == dim_ - 1) {
        const std::size_t m = level.ids.size();
        std::size_t lo = a + m;
        std::size_t hi = b + m;
        auto take = [&](std::uint32_t pos) { offer(level.ids[pos], best); };
        while (lo < hi) {
            if (lo & 1) take(level.seg[lo++]);
            if (hi & 1) take(level.seg[--hi]);
            lo >>= 1;
            hi >>= 1;
        }
        return;
    }
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const auto& node = level.nodes[stack[--top]];
        if (node.hi <= a || node.lo >= b) {
            continue;
        }
        if (!node.sub) {
            scan(level, std::max<std::size_t>(node.lo, a), std::min<std::size_t>(node.hi, b), box, best);
        } else if (a <= node.lo && node.hi <= b) {
            query_level(*node.sub, box, best);
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
}

std::optional<RangeHit> RangeTree::query_box(std::span<const Interval> box) const {
    if (static_cast<int>(box.size()) != dim_) {
        throw InputError("box has " + std::to_string(box.size()) + " intervals, expected " + std::to_string(dim_));
    }
    std::int64_t best = -1;
    if (root_) {
        query_level(*root_, box, best);
    }
    if (best < 0) {
        return std::nullopt;
    }
    return RangeHit{values_[best], payloads_[best]};
}

std::optional<RangeHit> RangeTree::query_constrained(std::span<const CoordConstraint> cons,
                                                     std::size_t* boxes_issued) const {
    if (static_cast<int>(cons.size()) != dim_) {
        throw InputError("constraint list has " + std::to_string(cons.size()) + " entries, expected " +
                         std::to_string(dim_));
    }
    auto boxes = expand_constraints(cons);
    if (boxes_issued) {
        *boxes_issued = boxes.size();
    }
    std::optional<RangeHit> best;
    for (const auto& box : boxes) {
        auto hit = query_box(box);
        if (hit && (!best || hit->value > best->value)) {
            best = hit;
        }
    }
    return best;
}

}
