#include <gtest/gtest.h>

#include <random>

#include "arbor/error.hpp"
#include "arbor/range_tree.hpp"

using namespace arbor;

namespace {

std::vector<ValuedPoint> three_points() {
    return {{{1, 2}, 5.0, 0}, {{1, 3}, 7.0, 1}, {{2, 2}, 1.0, 2}};
}

// linear scan oracle over an explicit predicate
template <class Keep>
std::optional<double> scan(const std::vector<ValuedPoint>& pts, Keep keep) {
    std::optional<double> best;
    for (const auto& p : pts) {
        if (keep(p) && (!best || p.value > *best)) best = p.value;
    }
    return best;
}

std::vector<ValuedPoint> random_points(std::mt19937_64& rng, std::size_t count, int dim, int span) {
    std::uniform_int_distribution<Coord> c(0, span);
    std::uniform_int_distribution<int> v(-1000, 1000);
    std::vector<ValuedPoint> pts(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (int d = 0; d < dim; ++d) pts[i].coords.push_back(c(rng));
        pts[i].value = v(rng);
        pts[i].payload = static_cast<std::int64_t>(i);
    }
    return pts;
}

std::vector<Interval> random_box(std::mt19937_64& rng, int dim, int span) {
    std::uniform_int_distribution<Coord> c(-1, span + 1);
    std::vector<Interval> box(dim);
    for (auto& iv : box) {
        Coord a = c(rng), b = c(rng);
        if (a > b) std::swap(a, b);
        iv = {a, b};
        if (rng() % 5 == 0) iv.lo = kCoordMin;
        if (rng() % 5 == 0) iv.hi = kCoordMax;
    }
    return box;
}

CoordConstraint random_constraint(std::mt19937_64& rng, int span) {
    std::uniform_int_distribution<Coord> c(0, span);
    switch (rng() % 5) {
        case 0: return CoordConstraint::any();
        case 1: return CoordConstraint::eq(c(rng));
        case 2: return CoordConstraint::at_most(c(rng));
        case 3: return CoordConstraint::not_eq_to(c(rng));
        default: {
            Coord a = c(rng), b = c(rng);
            if (a == b) b = a + 1;
            return CoordConstraint::not_in(a, b);
        }
    }
}

}

TEST(RangeTree, EmptySetAnswersNothing) {
    RangeTree rt(std::vector<ValuedPoint>{}, 2);
    std::vector<Interval> box(2);
    EXPECT_FALSE(rt.query_box(box));
    std::vector<CoordConstraint> cons{CoordConstraint::any(), CoordConstraint::any()};
    EXPECT_FALSE(rt.query_constrained(cons));
}

TEST(RangeTree, BoxExamples) {
    auto pts = three_points();
    RangeTree rt(pts, 2);
    std::vector<Interval> column{{1, 1}, {kCoordMin, kCoordMax}};
    auto hit = rt.query_box(column);
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->value, 7.0);
    EXPECT_EQ(hit->payload, 1);
    std::vector<Interval> off{{3, 4}, {0, 0}};
    EXPECT_FALSE(rt.query_box(off));
}

TEST(RangeTree, ConstraintExamples) {
    auto pts = three_points();
    RangeTree rt(pts, 2);
    std::vector<CoordConstraint> a{CoordConstraint::eq(1), CoordConstraint::not_eq_to(2)};
    auto hit = rt.query_constrained(a);
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->value, 7.0);
    std::vector<CoordConstraint> b{CoordConstraint::not_in(1, 2), CoordConstraint::any()};
    EXPECT_FALSE(rt.query_constrained(b));
}

TEST(RangeTree, RejectsBadInput) {
    std::vector<ValuedPoint> bad{{{1, 2, 3}, 1.0, 0}};
    EXPECT_THROW(RangeTree(bad, 2), InputError);
    auto pts = three_points();
    RangeTree rt(pts, 2);
    std::vector<Interval> box(3);
    EXPECT_THROW(rt.query_box(box), InputError);
    EXPECT_THROW(CoordConstraint::not_in(4, 4), InputError);
}

TEST(RangeTree, DuplicateCoordinatesKeepTheMaximum) {
    std::vector<ValuedPoint> pts{{{3, 3}, 1.0, 0}, {{3, 3}, 9.0, 1}, {{3, 3}, 4.0, 2}};
    RangeTree rt(pts, 2);
    std::vector<Interval> box{{3, 3}, {3, 3}};
    EXPECT_EQ(rt.query_box(box)->value, 9.0);
}

TEST(RangeTree, ExhaustiveBoxesOnSmallSets) {
    std::mt19937_64 rng(21);
    for (std::size_t count : {1u, 5u, 17u, 64u}) {
        for (int dim = 1; dim <= 3; ++dim) {
            auto pts = random_points(rng, count, dim, 4);
            RangeTree rt(pts, dim);
            // every box with endpoints in [-1, 5] on each axis for dim <= 2
            const int lim = dim <= 2 ? 7 : 3;
            std::vector<Interval> box(dim);
            std::vector<int> idx(2 * dim, 0);
            for (;;) {
                bool valid = true;
                for (int d = 0; d < dim; ++d) {
                    box[d] = {idx[2 * d] - 1, idx[2 * d + 1] - 1};
                    valid = valid && box[d].lo <= box[d].hi;
                }
                if (valid) {
                    auto ref = scan(pts, [&](const ValuedPoint& p) {
                        for (int d = 0; d < dim; ++d)
                            if (!box[d].contains(p.coords[d])) return false;
                        return true;
                    });
                    auto got = rt.query_box(box);
                    ASSERT_EQ(got.has_value(), ref.has_value());
                    if (got) {
                        ASSERT_EQ(got->value, *ref);
                        ASSERT_EQ(pts[got->payload].value, got->value);
                    }
                }
                int j = 0;
                while (j < 2 * dim && ++idx[j] == lim) idx[j++] = 0;
                if (j == 2 * dim) break;
            }
        }
    }
}

TEST(RangeTree, RandomBoxesInFourDimensions) {
    std::mt19937_64 rng(22);
    auto pts = random_points(rng, 500, 4, 30);
    RangeTree rt(pts, 4);
    for (int q = 0; q < 100; ++q) {
        auto box = random_box(rng, 4, 30);
        auto ref = scan(pts, [&](const ValuedPoint& p) {
            for (int d = 0; d < 4; ++d)
                if (!box[d].contains(p.coords[d])) return false;
            return true;
        });
        auto got = rt.query_box(box);
        ASSERT_EQ(got.has_value(), ref.has_value());
        if (got) {
            ASSERT_EQ(got->value, *ref);
        }
    }
}

TEST(RangeTree, MixedConstraintsMatchFilterScan) {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        auto pts = random_points(rng, 300, 3, 8);
        RangeTree rt(pts, 3);
        for (int q = 0; q < 100; ++q) {
            std::vector<CoordConstraint> cons;
            for (int d = 0; d < 3; ++d) cons.push_back(random_constraint(rng, 8));
            auto ref = scan(pts, [&](const ValuedPoint& p) {
                for (int d = 0; d < 3; ++d)
                    if (!cons[d].admits(p.coords[d])) return false;
                return true;
            });
            auto got = rt.query_constrained(cons);
            ASSERT_EQ(got.has_value(), ref.has_value());
            if (got) {
                ASSERT_EQ(got->value, *ref);
            }
        }
    }
}

TEST(RangeTree, ExpansionCountsAreProductsOfSplits) {
    std::mt19937_64 rng(24);
    auto pts = random_points(rng, 50, 4, 5);
    RangeTree rt(pts, 4);
    for (int t = 0; t <= 4; ++t) {
        std::vector<CoordConstraint> ne(4, CoordConstraint::any()), ni(4, CoordConstraint::eq(2));
        for (int d = 0; d < t; ++d) {
            ne[d] = CoordConstraint::not_eq_to(d);
            ni[d] = CoordConstraint::not_in(d, d + 2);
        }
        std::size_t boxes = 0;
        rt.query_constrained(ne, &boxes);
        EXPECT_EQ(boxes, std::size_t{1} << t);
        rt.query_constrained(ni, &boxes);
        std::size_t three = 1;
        for (int d = 0; d < t; ++d) three *= 3;
        EXPECT_EQ(boxes, three);
    }
}

TEST(RangeTree, EnlargingABoxNeverLowersTheAnswer) {
    std::mt19937_64 rng(25);
    auto pts = random_points(rng, 400, 3, 20);
    RangeTree rt(pts, 3);
    for (int q = 0; q < 300; ++q) {
        auto box = random_box(rng, 3, 20);
        auto before = rt.query_box(box);
        int d = static_cast<int>(rng() % 3);
        if (box[d].lo != kCoordMin) box[d].lo -= 1 + static_cast<Coord>(rng() % 4);
        if (box[d].hi != kCoordMax) box[d].hi += 1 + static_cast<Coord>(rng() % 4);
        auto after = rt.query_box(box);
        if (before) {
            ASSERT_TRUE(after);
            ASSERT_GE(after->value, before->value);
        }
    }
}
