#include "fescr/heading_path.hpp"

#include <algorithm>

namespace fescr
{
    GlobalPath::GlobalPath (std::vector<Point2> waypoints) : waypoints_ (std::move (waypoints))
    {
        if (waypoints_.size () < 2)
            throw InvalidArgument ("global path needs at least 2 waypoints");
        arc_.reserve (waypoints_.size ());
        arc_.push_back (0.0);
        for (std::size_t i = 0; i < waypoints_.size (); ++i)
        {
            if (!waypoints_[i].finite ())
                throw InvalidArgument ("global path waypoint " + std::to_string (i) + " is not finite");
            if (i == 0)
                continue;
            const double d = distance (waypoints_[i - 1], waypoints_[i]);
            if (!(d > 0.0))
                throw InvalidArgument ("global path waypoints " + std::to_string (i - 1) + " and " + std::to_string (i) + " coincide");
            arc_.push_back (arc_.back () + d);
        }
    }

    std::size_t GlobalPath::nearest_index (const Point2 &p, std::size_t from) const
    {
        std::size_t best = std::min (from, waypoints_.size () - 1);
        double best_d = distance (waypoints_[best], p);
        for (std::size_t i = best + 1; i < waypoints_.size (); ++i)
        {
            const double d = distance (waypoints_[i], p);
            if (d < best_d)
            {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

    GlobalPath GlobalPath::suffix (std::size_t from) const
    {
        from = std::min (from, waypoints_.size () - 2);
        return GlobalPath{std::vector<Point2> (waypoints_.begin () + static_cast<std::ptrdiff_t> (from), waypoints_.end ())};
    }

    std::optional<Vector2> consistent_heading (const CirclePath *previous, std::size_t depth, const Circle &circle)
    {
        if (previous == nullptr || depth + 2 >= previous->size ())
            return std::nullopt;
        const Vector2 h = previous->circles[depth + 2].center () - circle.center ();
        if (!(h.norm () > 0.0))
            return std::nullopt;
        return h;
    }

    std::size_t lookahead_index (const GlobalPath &global, const Point2 &robot_pos, const Circle &circle)
    {
        const double threshold = distance (robot_pos, circle.center ()) + circle.radius ();
        const auto &wps = global.waypoints ();
        for (std::size_t i = 0; i < wps.size (); ++i)
            if (distance (wps[i], robot_pos) >= threshold)
                return i;
        return wps.size () - 1;
    }

    Vector2 greedy_heading (const GlobalPath &global, const Point2 &robot_pos, const Circle &circle)
    {
        const Point2 &target = global.waypoints ()[lookahead_index (global, robot_pos, circle)];
        const Vector2 h = target - circle.center ();
        if (!(h.norm () > 0.0))
            throw DegenerateHeading{};
        return h;
    }

    std::string_view to_string (PathVariant v) noexcept { return v == PathVariant::consistent ? "consistent" : "greedy"; }

    PathCost path_cost (const CirclePath &path, const GlobalPath &global, double weight)
    {
        PathCost c;
        c.weight = weight;
        c.local_length = path.length ();
        c.anchor_index = global.nearest_index (path.end ());
        c.reconnect_distance = distance (path.end (), global.waypoints ()[c.anchor_index]);
        c.remaining_global = global.remaining_from (c.anchor_index);
        return c;
    }

    PathSelection select_path (const CirclePath &consistent, const CirclePath &greedy, const GlobalPath &global, const PlannerParams &params)
    {
        PathSelection s{PathVariant::consistent, path_cost (consistent, global, params.consistent_weight), path_cost (greedy, global, 1.0)};
        if (s.greedy_cost.total () < s.consistent_cost.total ())
            s.chosen = PathVariant::greedy;
        return s;
    }

    const CirclePath &DualPlanResult::path () const
    {
        if (!chosen)
            throw std::logic_error ("no chain was chosen");
        return *chosen == PathVariant::consistent ? *consistent.path : *greedy.path;
    }

    DualPlanResult plan_dual (const ObstacleCloud &cloud, const Pose2 &robot_pose, const CirclePath *previous, const GlobalPath &global,
                              const PlannerParams &params, std::size_t node_budget)
    {
        const Point2 robot = robot_pose.position;
        const auto greedy_provider = [&] (std::size_t, const Circle &circle) -> std::optional<Vector2> {
            try
            {
                return greedy_heading (global, robot, circle);
            }
            catch (const DegenerateHeading &)
            {
                return std::nullopt; // search falls back to the approach direction
            }
        };
        const auto consistent_provider = [&] (std::size_t depth, const Circle &circle) -> std::optional<Vector2> {
            if (auto h = consistent_heading (previous, depth, circle))
                return h;
            return greedy_provider (depth, circle);
        };

        DualPlanResult out;
        out.greedy = find_chain (cloud, robot_pose, greedy_provider, params, node_budget);
        if (previous != nullptr)
        {
            out.consistent_ran = true;
            out.consistent = find_chain (cloud, robot_pose, consistent_provider, params, node_budget);
        }

        if (out.consistent.ok ())
            out.consistent_cost = path_cost (*out.consistent.path, global, params.consistent_weight);
        if (out.greedy.ok ())
            out.greedy_cost = path_cost (*out.greedy.path, global, 1.0);

        if (out.consistent.ok () && out.greedy.ok ())
            out.chosen = select_path (*out.consistent.path, *out.greedy.path, global, params).chosen;
        else if (out.consistent.ok ())
            out.chosen = PathVariant::consistent;
        else if (out.greedy.ok ())
            out.chosen = PathVariant::greedy;
        return out;
    }

} // namespace fescr
