#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace arbor {

using Coord = std::int64_t;
inline constexpr Coord kCoordMin = std::numeric_limits<Coord>::min();  // stands for -inf
inline constexpr Coord kCoordMax = std::numeric_limits<Coord>::max();  // stands for +inf

// closed integer interval; lo > hi is empty
struct Interval {
    Coord lo = kCoordMin;
    Coord hi = kCoordMax;

    bool contains(Coord x) const { return lo <= x && x <= hi; }
};

struct ValuedPoint {
    std::vector<Coord> coords;
    double value = 0.0;
    std::int64_t payload = 0;
};

/*
 * Per-coordinate filter. NotEq and NotIn are exclusions and expand into two
 * resp. three disjoint intervals before they reach the range tree.
 */
struct CoordConstraint {
    enum class Kind { Any, Eq, AtMost, NotEq, NotIn };

    Kind kind = Kind::Any;
    Coord a = 0;
    Coord b = 0;

    static CoordConstraint any() { return {}; }
    static CoordConstraint eq(Coord a) { return {Kind::Eq, a, 0}; }
    static CoordConstraint at_most(Coord a) { return {Kind::AtMost, a, 0}; }
    static CoordConstraint not_eq_to(Coord a) { return {Kind::NotEq, a, 0}; }
    // throws InputError when a == b
    static CoordConstraint not_in(Coord a, Coord b);

    bool admits(Coord x) const;
    std::vector<Interval> intervals() const;
};

// all boxes of the Cartesian product of per-coordinate interval splits
std::vector<std::vector<Interval>> expand_constraints(std::span<const CoordConstraint> cons);

struct RangeHit {
    double value;
    std::int64_t payload;
};

/*
 * Static k-dimensional range tree answering "max value inside a box" queries.
 *
 * Layered construction: the level for coordinate d is a balanced binary tree
 * over the points sorted by that coordinate; each internal node owns a level
 * for coordinate d+1 over its points, and the last coordinate is a segment
 * tree of values. Nodes holding at most kBucket points are scanned directly
 * instead of carrying a sub-level. Duplicate coordinate tuples are allowed.
 */
class RangeTree {
public:
    RangeTree();
    RangeTree(std::span<const ValuedPoint> points, int dimension);
    // row-major coordinates, coords.size() == dimension * values.size()
    RangeTree(int dimension, std::vector<Coord> coords, std::vector<double> values,
              std::vector<std::int64_t> payloads);
    RangeTree(RangeTree&&) noexcept;
    RangeTree& operator=(RangeTree&&) noexcept;
    ~RangeTree();

    int dimension() const { return dim_; }
    std::size_t size() const { return values_.size(); }

    std::optional<RangeHit> query_box(std::span<const Interval> box) const;

    // best point satisfying every constraint; `boxes_issued`, when given,
    // receives the number of boxes the constraints expanded into
    std::optional<RangeHit> query_constrained(std::span<const CoordConstraint> cons,
                                              std::size_t* boxes_issued = nullptr) const;

private:
    struct Level;
    static constexpr std::size_t kBucket = 16;

    Coord coord(std::uint32_t id, int d) const { return coords_[static_cast<std::size_t>(id) * dim_ + d]; }

    void build();
    std::unique_ptr<Level> build_level(int d, std::vector<std::uint32_t> ids) const;
    void query_level(const Level& level, std::span<const Interval> box, std::int64_t& best) const;
    void scan(const Level& level, std::size_t from, std::size_t to, std::span<const Interval> box,
              std::int64_t& best) const;
    void offer(std::uint32_t id, std::int64_t& best) const;

    int dim_ = 1;
    std::vector<Coord> coords_;
    std::vector<double> values_;
    std::vector<std::int64_t> payloads_;
    std::unique_ptr<Level> root_;
};

}
