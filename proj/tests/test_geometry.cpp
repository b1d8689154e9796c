#include "fescr/geometry.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fescr;

namespace
{
    double brute_force_min (const std::vector<Point2> &pts, const Point2 &p)
    {
        double best = std::numeric_limits<double>::infinity ();
        for (const auto &o : pts)
            best = std::min (best, std::sqrt ((o.x - p.x) * (o.x - p.x) + (o.y - p.y) * (o.y - p.y)));
        return best;
    }
} // namespace

TEST (Angles, NormalizeWrapsIntoHalfOpenRange)
{
    EXPECT_DOUBLE_EQ (normalize_angle (3.0 * kPi), kPi);
    EXPECT_DOUBLE_EQ (normalize_angle (-kPi), kPi);
    EXPECT_NEAR (normalize_angle (kTwoPi + 0.25), 0.25, 1e-12);
    EXPECT_NEAR (angle_diff (-3.0, 3.0), kTwoPi - 6.0, 1e-12);
}

TEST (NearestObstacle, SinglePoint)
{
    const ObstacleCloud cloud ({{2.0, 0.0}});
    EXPECT_EQ (nearest_obstacle_distance (cloud, {0.0, 0.0}), 2.0);
}

TEST (NearestObstacle, TwoPointsTakesMinimum)
{
    const ObstacleCloud cloud ({{3.0, 4.0}, {1.0, 0.0}});
    EXPECT_EQ (nearest_obstacle_distance (cloud, {0.0, 0.0}), 1.0);
}

TEST (NearestObstacle, EmptyCloudIsInfinite)
{
    const ObstacleCloud cloud;
    EXPECT_TRUE (std::isinf (nearest_obstacle_distance (cloud, {0.0, 0.0})));
    EXPECT_EQ (cloud.nearest_distance_capped ({0.0, 0.0}, 1.5), 1.5);
}

TEST (NearestObstacle, MatchesBruteForceOnUniformCloud)
{
    std::mt19937_64 rng (7);
    std::uniform_real_distribution<double> u (-5.0, 5.0);
    std::vector<Point2> pts;
    for (int i = 0; i < 1000; ++i)
        pts.push_back ({u (rng), u (rng)});
    const ObstacleCloud cloud (pts);
    EXPECT_EQ (nearest_obstacle_distance (cloud, {0.0, 0.0}), brute_force_min (pts, {0.0, 0.0}));
    for (int i = 0; i < 500; ++i)
    {
        const Point2 q{u (rng) * 1.5, u (rng) * 1.5};
        EXPECT_EQ (nearest_obstacle_distance (cloud, q), brute_force_min (pts, q));
        for (const double cap : {0.1, 0.5, 1.5, 40.0})
            EXPECT_EQ (cloud.nearest_distance_capped (q, cap), std::min (cap, brute_force_min (pts, q)));
    }
}

TEST (NearestObstacle, ClusteredCloudFarQuery)
{
    // points on a line far from the query exercise the growing search radius
    std::vector<Point2> pts;
    for (int i = 0; i < 200; ++i)
        pts.push_back ({100.0 + 0.01 * i, -3.0});
    const ObstacleCloud cloud (pts);
    EXPECT_EQ (cloud.nearest_distance ({0.0, 0.0}), brute_force_min (pts, {0.0, 0.0}));
}

TEST (Footprint, CircumscribedRadius)
{
    EXPECT_NEAR (Footprint (0.75, 1.1).circumscribed_radius (), std::sqrt (0.375 * 0.375 + 0.55 * 0.55), 1e-15);
    EXPECT_NEAR (Footprint (0.75, 1.1).circumscribed_radius (), 0.665676, 1e-6);
    EXPECT_NEAR (Footprint (2.0, 2.0).circumscribed_radius (), std::sqrt (2.0), 1e-15);
}

TEST (Footprint, RejectsDegenerateShapes)
{
    EXPECT_THROW (Footprint (2.0, 0.0), InvalidArgument);
    EXPECT_THROW (Footprint (0.0, 1.0), InvalidArgument);
    EXPECT_THROW (Footprint (1.2, 1.0), InvalidArgument);
}

TEST (Circle, RejectsNonPositiveRadius)
{
    EXPECT_THROW (Circle ({0.0, 0.0}, 0.0), InvalidArgument);
    EXPECT_THROW (Circle ({0.0, 0.0}, -1.0), InvalidArgument);
    EXPECT_THROW (Circle ({0.0, std::nan ("")}, 1.0), InvalidArgument);
}

TEST (PivotAngle, Branches)
{
    const Footprint f (0.75, 1.1);
    EXPECT_EQ (pivot_angle (0.375, f), 0.0);
    EXPECT_EQ (pivot_angle (0.2, f), 0.0);
    EXPECT_NEAR (pivot_angle (f.circumscribed_radius (), f), 0.5 * kPi, 1e-15);
    EXPECT_EQ (pivot_angle (0.7, f), kPi);
    // middle branch against a direct evaluation
    const double r = 0.5;
    EXPECT_NEAR (pivot_angle (r, f), 0.5 * kPi - std::acos ((2 * r - 0.75) / (2 * f.circumscribed_radius () - 0.75)), 1e-15);
}

TEST (PivotAngle, MonotoneInRadius)
{
    const Footprint f (0.75, 1.1);
    double prev = -1.0;
    for (double r = 0.3; r < 1.0; r += 0.001)
    {
        const double t = pivot_angle (r, f);
        EXPECT_GE (t, prev);
        prev = t;
    }
}

TEST (HeadingOverlap, AlongHeading)
{
    const Circle parent ({0.0, 0.0}, 1.0);
    EXPECT_TRUE (heading_overlap (parent, Circle ({1.0, 0.0}, 0.4), 0.0));
}

TEST (HeadingOverlap, OppositeHeading)
{
    const Circle parent ({0.0, 0.0}, 1.0);
    EXPECT_FALSE (heading_overlap (parent, Circle ({1.0, 0.0}, 0.9), kPi));
}

TEST (HeadingOverlap, BoundaryIsInclusive)
{
    const Circle parent ({0.0, 0.0}, 1.0);
    EXPECT_TRUE (heading_overlap (parent, Circle ({1.0, 0.0}, 1.0), std::atan (1.0)));
    EXPECT_FALSE (heading_overlap (parent, Circle ({1.0, 0.0}, 1.0), std::nextafter (std::atan (1.0), 1.0)));
}

TEST (HeadingOverlap, WrapsAcrossPi)
{
    const Circle parent ({0.0, 0.0}, 1.0);
    EXPECT_TRUE (heading_overlap (parent, Circle ({-1.0, 0.01}, 0.5), -kPi + 0.05));
}

TEST (AngularDeviation, HandValues)
{
    EXPECT_NEAR (angular_deviation ({0, 0}, {1, 0}, {2, 0}), 0.0, 1e-15);
    EXPECT_NEAR (angular_deviation ({0, 0}, {0, 1}, {1, 0}), 0.5 * kPi, 1e-15);
    EXPECT_NEAR (angular_deviation ({0, 0}, {1, 1}, {1, 0}), 0.25 * kPi, 1e-15);
    EXPECT_NEAR (angular_deviation ({0, 0}, {-1, 0}, {1, 0}), kPi, 1e-15);
}

TEST (Polyline, LengthAndSegmentDistance)
{
    const std::vector<Point2> pts{{0, 0}, {3, 4}, {3, 0}};
    EXPECT_DOUBLE_EQ (polyline_length (pts), 9.0);
    EXPECT_DOUBLE_EQ (point_segment_distance ({0, 1}, {-1, 0}, {1, 0}), 1.0);
    EXPECT_DOUBLE_EQ (point_segment_distance ({3, 4}, {-1, 0}, {0, 0}), 5.0);
}
