#include <vector>

#include <gtest/gtest.h>

#include "rpfif/geometry.hpp"

using namespace rpfif;

TEST(Interval, Make) {
    const auto I = make_interval({-2, 1}, {2, 1});
    EXPECT_EQ(I.u_lo(), -2);
    EXPECT_EQ(I.u_hi(), 2);
    EXPECT_EQ(I.length(), 4);
    const auto unit = make_interval({0, 1}, {3, 3});
    EXPECT_EQ(unit.u_hi(), 1);
    EXPECT_THROW(make_interval({1, 1}, {1, 1}), DegenerateIntervalError);
    EXPECT_THROW(make_interval({2, 1}, {1, 1}), DegenerateIntervalError);
    EXPECT_THROW(make_interval({1, 1}, {2, 2}), DegenerateIntervalError);
}

TEST(Interval, Contains) {
    const auto I = make_interval({-2, 1}, {2, 1});
    EXPECT_TRUE(interval_contains(I, {0, 1}));
    EXPECT_FALSE(interval_contains(I, {3, 1}));
    EXPECT_TRUE(interval_contains(I, {-2, 1}));
    EXPECT_TRUE(interval_contains(I, {4, -2}));   // u = -2
    EXPECT_FALSE(interval_contains(I, {-6, -2}));  // u = 3
}

TEST(Rectangle, Contains) {
    const auto R = make_rectangle(make_interval({-2, 1}, {2, 1}), {-1, 1}, {1, 1});
    EXPECT_TRUE(rectangle_contains(R, {0, 0, 1}));
    EXPECT_FALSE(rectangle_contains(R, {0, 2, 1}));
    EXPECT_TRUE(rectangle_contains(R, {-2, 1, 1}));
    EXPECT_TRUE(rectangle_contains(R, {4, -2, -2}));
    EXPECT_THROW(make_rectangle(make_interval({-2, 1}, {2, 1}), {1, 1}, {1, 1}), DegenerateIntervalError);
}

TEST(SampleInterval, Grids) {
    auto s = sample_interval(make_interval({0, 1}, {1, 1}), 3);
    ASSERT_EQ(s.size(), 3U);
    EXPECT_EQ(s[0].u(), 0);
    EXPECT_EQ(s[1].u(), 0.5);
    EXPECT_EQ(s[2].u(), 1);
    s = sample_interval(make_interval({-2, 1}, {2, 1}), 5);
    for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(s[k].u(), -2 + k);
    s = sample_interval(make_interval({-2, 1}, {2, 1}), 2);
    ASSERT_EQ(s.size(), 2U);
    EXPECT_EQ(s[1].u(), 2);
    EXPECT_THROW(sample_interval(make_interval({0, 1}, {1, 1}), 1), ValidationError);
}

TEST(SampledGraph, Construction) {
    const SampledGraph g({{0, 1}, {2, 2}, {6, 3}}, {{1, 1}, {4, 2}, {-3, -1}});
    EXPECT_EQ(g.size(), 3U);
    EXPECT_EQ(g.u()[1], 1);
    EXPECT_EQ(g.v()[1], 2);
    EXPECT_EQ(g.v()[2], 3);
    EXPECT_THROW(SampledGraph({{0, 1}}, {{0, 1}}), ValidationError);
    EXPECT_THROW(SampledGraph({{0, 1}, {0, 2}}, {{0, 1}, {1, 1}}), OrderingError);
    EXPECT_THROW(SampledGraph({{0, 1}, {1, 1}}, {{0, 1}}), ValidationError);
}

TEST(SampledGraph, Interpolate) {
    const auto g = SampledGraph::from_canonical({0, 1, 3}, {0, 2, -2});
    EXPECT_EQ(g.interpolate(1), 2);
    EXPECT_EQ(g.interpolate(0.5), 1);
    EXPECT_EQ(g.interpolate(2), 0);
    EXPECT_EQ(g.interpolate(-1), 0);
    EXPECT_EQ(g.interpolate(5), -2);
    EXPECT_EQ(g(AxisPoint10(4, 2)).v(), 0);
}

TEST(GraphSupDist, Examples) {
    const auto f = SampledGraph::from_canonical({0, 1, 2}, {1, 2, 3});
    EXPECT_EQ(graph_sup_dist(f, f), 0);
    EXPECT_EQ(graph_sup_dist(f, SampledGraph::from_canonical({0, 1, 2}, {2, 3, 4})), 1);
    EXPECT_EQ(graph_sup_dist(f, SampledGraph::from_canonical({0, 1, 2}, {1, 2.25, 3})), 0.25);
    EXPECT_THROW(graph_sup_dist(f, SampledGraph::from_canonical({0, 1.5, 2}, {1, 2, 3})), GridMismatchError);
    EXPECT_THROW(graph_sup_dist(f, SampledGraph::from_canonical({0, 2}, {1, 3})), GridMismatchError);
}
