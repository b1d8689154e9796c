#include "fescr/search.hpp"

#include <algorithm>
#include <cmath>

namespace fescr
{
    std::vector<Point2> CirclePath::centers () const
    {
        std::vector<Point2> out;
        out.reserve (circles.size ());
        for (const auto &c : circles)
            out.push_back (c.center ());
        return out;
    }

    double CirclePath::length () const
    {
        const auto pts = centers ();
        return polyline_length (pts);
    }

    std::string_view to_string (PlanFailure f) noexcept
    {
        switch (f)
        {
        case PlanFailure::no_path_found:
            return "no_path_found";
        case PlanFailure::budget_exhausted:
            return "budget_exhausted";
        case PlanFailure::root_blocked:
            return "root_blocked";
        }
        return "unknown";
    }

    Partition partition_children (std::span<const CandidateCircle> children, const Circle &parent, const Vector2 &h,
                                  const PlannerParams &params)
    {
        Partition out;
        const double heading_angle = h.angle ();
        for (const auto &child : children)
        {
            if (!heading_overlap (parent, child.circle, heading_angle))
                out.q3.push_back (child);
            else if (std::abs (child.circle.radius () - params.comfort_radius) <= kComfortTolerance)
                out.q1.push_back (child);
            else
                out.q2.push_back (child);
        }
        return out;
    }

    namespace
    {
        struct Ranked
        {
            const CandidateCircle *candidate;
            double deviation;
        };

        // strict weak ordering on (primary key, deviation, boundary angle)
        bool better_by_deviation (const Ranked &a, const Ranked &b)
        {
            if (a.deviation != b.deviation)
                return a.deviation < b.deviation;
            return a.candidate->boundary_angle < b.candidate->boundary_angle;
        }

        bool better_by_radius (const Ranked &a, const Ranked &b)
        {
            const double ra = a.candidate->circle.radius ();
            const double rb = b.candidate->circle.radius ();
            if (ra != rb)
                return ra > rb;
            return better_by_deviation (a, b);
        }

        std::vector<Ranked> rank (std::span<const CandidateCircle> set, const Circle &parent, const Vector2 &h)
        {
            std::vector<Ranked> out;
            out.reserve (set.size ());
            for (const auto &c : set)
                out.push_back ({&c, angular_deviation (parent.center (), c.circle.center (), h)});
            return out;
        }
    } // namespace

    std::optional<CandidateCircle> select_child (std::span<const CandidateCircle> q1, std::span<const CandidateCircle> q2,
                                                 std::span<const CandidateCircle> q3, const Circle &parent, const Vector2 &h)
    {
        if (!q1.empty ())
        {
            const auto r = rank (q1, parent, h);
            return *std::min_element (r.begin (), r.end (), better_by_deviation)->candidate;
        }
        if (!q2.empty ())
        {
            const auto r = rank (q2, parent, h);
            return *std::min_element (r.begin (), r.end (), better_by_radius)->candidate;
        }
        if (!q3.empty ())
        {
            const auto r = rank (q3, parent, h);
            return *std::min_element (r.begin (), r.end (), better_by_deviation)->candidate;
        }
        return std::nullopt;
    }

    namespace
    {
        struct SearchNode
        {
            Circle circle;
            double approach_angle;
            bool expanded{false};
            Vector2 heading{};
            std::vector<CandidateCircle> children;
            std::vector<bool> tried;
        };
    } // namespace

    ChainResult find_chain (const ObstacleCloud &cloud, const Pose2 &robot_pose, const HeadingProvider &heading,
                            const PlannerParams &params, std::size_t node_budget)
    {
        ChainResult result;
        std::optional<Circle> root;
        try
        {
            root = make_root_circle (cloud, robot_pose.position, params);
        }
        catch (const RootBlocked &)
        {
            result.failure = PlanFailure::root_blocked;
            return result;
        }

        std::vector<SearchNode> stack;
        stack.reserve (params.chain_length);
        stack.push_back ({*root, robot_pose.yaw, false, {}, {}, {}});
        std::vector<Circle> occupied{*root};

        while (stack.size () < params.chain_length)
        {
            SearchNode &node = stack.back ();
            const std::size_t depth = stack.size () - 1;
            if (!node.expanded)
            {
                if (result.expansions >= node_budget)
                {
                    result.failure = PlanFailure::budget_exhausted;
                    return result;
                }
                ++result.expansions;
                node.expanded = true;
                node.children = enumerate_children (node.circle, depth, node.approach_angle, cloud, occupied, params);
                node.tried.assign (node.children.size (), false);
                std::optional<Vector2> h = heading ? heading (depth, node.circle) : std::nullopt;
                node.heading = (h && h->norm () > 0.0) ? *h : Vector2::from_polar (1.0, node.approach_angle);
            }

            std::vector<CandidateCircle> untried;
            for (std::size_t i = 0; i < node.children.size (); ++i)
                if (!node.tried[i])
                    untried.push_back (node.children[i]);
            const Partition parts = partition_children (untried, node.circle, node.heading, params);
            const auto pick = select_child (parts.q1, parts.q2, parts.q3, node.circle, node.heading);

            if (!pick)
            {
                // dead end: drop this node and resume at its parent
                stack.pop_back ();
                occupied.pop_back ();
                if (stack.empty ())
                {
                    result.failure = PlanFailure::no_path_found;
                    return result;
                }
                continue;
            }

            for (std::size_t i = 0; i < node.children.size (); ++i)
                if (node.children[i].boundary_angle == pick->boundary_angle)
                    node.tried[i] = true;

            const double approach = (pick->circle.center () - node.circle.center ()).angle ();
            stack.push_back ({pick->circle, approach, false, {}, {}, {}});
            occupied.push_back (pick->circle);
        }

        CirclePath path;
        for (const auto &n : stack)
        {
            path.circles.push_back (n.circle);
            path.approach_angles.push_back (n.approach_angle);
            path.pivot_angles.push_back (pivot_angle (n.circle.radius (), params.footprint));
        }
        result.path = std::move (path);
        return result;
    }

} // namespace fescr
