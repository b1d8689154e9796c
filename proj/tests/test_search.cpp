#include "fescr/search.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fescr;

namespace
{
    const PlannerParams kParams{};

    HeadingProvider fixed_heading (Vector2 h)
    {
        return [h] (std::size_t, const Circle &) -> std::optional<Vector2> { return h; };
    }

    CandidateCircle candidate (const Circle &parent, double angle, double radius)
    {
        return {Circle (parent.center () + Vector2::from_polar (parent.radius (), angle), radius), angle, 0};
    }

    std::vector<Point2> corridor (double half_width, double x0, double x1)
    {
        std::vector<Point2> pts;
        for (double x = x0; x <= x1; x += 0.02)
        {
            pts.push_back ({x, half_width});
            pts.push_back ({x, -half_width});
        }
        return pts;
    }

    void expect_safe (const CirclePath &path, std::span<const Point2> pts)
    {
        for (const auto &c : path.circles)
            EXPECT_GE (nearest_obstacle_distance_scan (pts, c.center ()), c.radius ());
    }
} // namespace

TEST (Partition, OpenSpaceHasNoQ2)
{
    const Circle parent ({0, 0}, 1.5);
    const auto kids = enumerate_children (parent, 0, 0.0, ObstacleCloud{}, {}, kParams);
    const Vector2 h{0.3, 1.0};
    const auto parts = partition_children (kids, parent, h, kParams);
    EXPECT_TRUE (parts.q2.empty ());
    EXPECT_EQ (parts.q1.size () + parts.q3.size (), kids.size ());
    // a comfort child overlaps when its center bearing is within atan(1) of h
    for (const auto &k : parts.q1)
        EXPECT_LE (std::abs (angle_diff (h.angle (), k.boundary_angle)), 0.25 * kPi);
    for (const auto &k : parts.q3)
        EXPECT_GT (std::abs (angle_diff (h.angle (), k.boundary_angle)), 0.25 * kPi);
}

TEST (Partition, SmallChildOnHeadingIsQ2)
{
    const Circle parent ({0, 0}, 1.0);
    const std::vector<CandidateCircle> kids{candidate (parent, 0.0, 0.8), candidate (parent, kPi, 0.8)};
    const auto parts = partition_children (kids, parent, {1.0, 0.0}, kParams);
    ASSERT_EQ (parts.q2.size (), 1u);
    EXPECT_EQ (parts.q2[0].boundary_angle, 0.0);
    EXPECT_TRUE (parts.q1.empty ());
    EXPECT_EQ (parts.q3.size (), 1u);
}

TEST (Partition, RandomCloudMatchesDirectOverlapTest)
{
    std::mt19937_64 rng (5);
    std::uniform_real_distribution<double> u (-4.0, 4.0);
    for (int trial = 0; trial < 30; ++trial)
    {
        std::vector<Point2> pts;
        for (int i = 0; i < 40; ++i)
            pts.push_back ({u (rng), u (rng)});
        const ObstacleCloud cloud (pts);
        const double r = cloud.nearest_distance_capped ({0, 0}, 1.5);
        if (!(r > 0.0))
            continue;
        const Circle parent ({0, 0}, r);
        const Vector2 h{u (rng), u (rng)};
        const auto kids = enumerate_children (parent, 0, 0.0, cloud, {}, kParams);
        const auto parts = partition_children (kids, parent, h, kParams);
        EXPECT_EQ (parts.q1.size () + parts.q2.size () + parts.q3.size (), kids.size ());
        const auto overlaps = [&] (const CandidateCircle &k) {
            const Vector2 link = k.circle.center () - parent.center ();
            double d = std::abs (std::atan2 (link.dy, link.dx) - std::atan2 (h.dy, h.dx));
            d = std::min (d, kTwoPi - d);
            return d <= std::atan (k.circle.radius () / parent.radius ());
        };
        for (const auto &k : parts.q1)
            EXPECT_TRUE (overlaps (k) && k.circle.radius () == 1.5);
        for (const auto &k : parts.q2)
            EXPECT_TRUE (overlaps (k) && k.circle.radius () < 1.5);
        for (const auto &k : parts.q3)
            EXPECT_FALSE (overlaps (k));
    }
}

TEST (SelectChild, Q1TakesSmallestDeviation)
{
    const Circle parent ({0, 0}, 1.5);
    const std::vector<CandidateCircle> q1{candidate (parent, 0.3, 1.5), candidate (parent, -0.1, 1.5)};
    const auto pick = select_child (q1, {}, {}, parent, {1.0, 0.0});
    ASSERT_TRUE (pick);
    EXPECT_EQ (pick->boundary_angle, -0.1);
}

TEST (SelectChild, Q2TakesLargestRadius)
{
    const Circle parent ({0, 0}, 1.5);
    const std::vector<CandidateCircle> q2{candidate (parent, 0.0, 0.9), candidate (parent, 0.2, 1.2)};
    const auto pick = select_child ({}, q2, {}, parent, {1.0, 0.0});
    ASSERT_TRUE (pick);
    EXPECT_EQ (pick->circle.radius (), 1.2);
}

TEST (SelectChild, TiesFallToSmallerBoundaryAngle)
{
    const Circle parent ({0, 0}, 1.5);
    const std::vector<CandidateCircle> q3{candidate (parent, kPi - 0.5, 1.5), candidate (parent, -kPi + 0.5, 1.5)};
    const auto pick = select_child ({}, {}, q3, parent, {-1.0, 0.0});
    ASSERT_TRUE (pick);
    EXPECT_EQ (pick->boundary_angle, -kPi + 0.5);
}

TEST (SelectChild, AllEmptyIsNone) { EXPECT_FALSE (select_child ({}, {}, {}, Circle ({0, 0}, 1.0), {1.0, 0.0})); }

TEST (FindChain, OpenSpaceIsStraight)
{
    for (const std::size_t L : {2u, 3u, 5u, 7u})
    {
        PlannerParams p;
        p.chain_length = L;
        const auto res = find_chain (ObstacleCloud{}, Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), p);
        ASSERT_TRUE (res.ok ());
        const auto &path = *res.path;
        ASSERT_EQ (path.size (), L);
        for (std::size_t i = 0; i < L; ++i)
        {
            EXPECT_EQ (path.circles[i].radius (), 1.5);
            EXPECT_NEAR (path.circles[i].center ().x, 1.5 * static_cast<double> (i), 1e-12);
            EXPECT_NEAR (path.circles[i].center ().y, 0.0, 1e-12);
        }
        EXPECT_NEAR (path.length (), 1.5 * static_cast<double> (L - 1), 1e-12);
        EXPECT_EQ (res.expansions, L - 1);
    }
}

TEST (FindChain, OneMeterCorridorStaysInside)
{
    const auto pts = corridor (0.5, -2.0, 12.0);
    const ObstacleCloud cloud (pts);
    const auto res = find_chain (cloud, Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), kParams);
    ASSERT_TRUE (res.ok ());
    for (const auto &c : res.path->circles)
    {
        EXPECT_LE (c.radius (), 0.5);
        EXPECT_LT (std::abs (c.center ().y), 0.5);
    }
    expect_safe (*res.path, pts);
    EXPECT_GT (res.path->end ().x, 0.0);
}

TEST (FindChain, EnclosedRobotFindsNothing)
{
    std::vector<Point2> pts;
    for (int i = 0; i < 720; ++i)
        pts.push_back (Point2{0, 0} + Vector2::from_polar (0.4, kTwoPi * i / 720));
    const auto res = find_chain (ObstacleCloud (pts), Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), kParams);
    EXPECT_FALSE (res.ok ());
    EXPECT_EQ (res.failure, PlanFailure::no_path_found);
}

TEST (FindChain, BlockedRoot)
{
    const auto res = find_chain (ObstacleCloud ({{0, 0}}), Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), kParams);
    EXPECT_FALSE (res.ok ());
    EXPECT_EQ (res.failure, PlanFailure::root_blocked);
}

TEST (FindChain, BudgetIsEnforced)
{
    const auto res = find_chain (ObstacleCloud{}, Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), kParams, 2);
    EXPECT_FALSE (res.ok ());
    EXPECT_EQ (res.failure, PlanFailure::budget_exhausted);
    EXPECT_EQ (res.expansions, 2u);
}

TEST (FindChain, NullHeadingFallsBackToApproach)
{
    const auto res = find_chain (ObstacleCloud{}, Pose2 ({0, 0}, 0.5 * kPi), HeadingProvider{}, kParams);
    ASSERT_TRUE (res.ok ());
    EXPECT_NEAR (res.path->end ().x, 0.0, 1e-9);
    EXPECT_NEAR (res.path->end ().y, 6.0, 1e-9);
}

TEST (FindChain, DeadEndBacktracksAroundWall)
{
    // wall across the heading with a gap far to the side
    std::vector<Point2> pts;
    for (double y = -6.0; y <= 2.0; y += 0.02)
        pts.push_back ({3.0, y});
    const ObstacleCloud cloud (pts);
    const auto res = find_chain (cloud, Pose2 ({0, 0}, 0.0), fixed_heading ({1.0, 0.0}), kParams);
    ASSERT_TRUE (res.ok ());
    expect_safe (*res.path, pts);
}

TEST (FindChain, ChainInvariantsOnRandomClouds)
{
    std::mt19937_64 rng (3);
    std::uniform_real_distribution<double> u (-8.0, 8.0);
    std::uniform_real_distribution<double> a (-kPi, kPi);
    int successes = 0;
    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<Point2> pts;
        for (int i = 0; i < 150; ++i)
            pts.push_back ({u (rng), u (rng)});
        const ObstacleCloud cloud (pts);
        const Pose2 pose ({u (rng) * 0.1, u (rng) * 0.1}, a (rng));
        const Vector2 h = Vector2::from_polar (1.0, a (rng));
        // a robot this close to a point would already overlap it
        if (cloud.nearest_distance (pose.position) < kParams.footprint.half_width ())
            continue;
        for (const std::size_t L : {3u, 5u, 7u})
        {
            PlannerParams p;
            p.chain_length = L;
            const auto r1 = find_chain (cloud, pose, fixed_heading (h), p);
            const auto r2 = find_chain (cloud, pose, fixed_heading (h), p);
            ASSERT_EQ (r1.ok (), r2.ok ());
            EXPECT_EQ (r1.expansions, r2.expansions);
            EXPECT_LE (r1.expansions, kDefaultNodeBudget);
            if (!r1.ok ())
                continue;
            ++successes;
            const auto &path = *r1.path;
            EXPECT_EQ (path, *r2.path);
            ASSERT_EQ (path.size (), L);
            expect_safe (path, pts);
            for (std::size_t i = 1; i < L; ++i)
                EXPECT_NEAR (distance (path.circles[i].center (), path.circles[i - 1].center ()), path.circles[i - 1].radius (), 1e-9);
            EXPECT_GE (path.length (), (L - 1) * 0.375 - 1e-9);
            EXPECT_LE (path.length (), (L - 1) * 1.5 + 1e-9);
        }
    }
    EXPECT_GT (successes, 100);
}
