#pragma once
/**
 * @file   heading_path.hpp
 * @brief  Heading providers, the consistent/greedy dual search, and the
 *         weighted cost used to pick between the two chains.
 */

#include "fescr/search.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace fescr
{
    /// Waypoint polyline with cumulative arc length.
    class GlobalPath
    {
      public:
        explicit GlobalPath (std::vector<Point2> waypoints);

        [[nodiscard]] const std::vector<Point2> &waypoints () const noexcept { return waypoints_; }
        [[nodiscard]] std::size_t size () const noexcept { return waypoints_.size (); }
        [[nodiscard]] const Point2 &back () const noexcept { return waypoints_.back (); }
        /// Arc length from waypoint 0 to waypoint i.
        [[nodiscard]] double arc_length (std::size_t i) const { return arc_.at (i); }
        [[nodiscard]] double total_length () const noexcept { return arc_.back (); }
        /// Arc length from waypoint i to the end.
        [[nodiscard]] double remaining_from (std::size_t i) const { return total_length () - arc_length (i); }

        /// Index of the waypoint closest to `p` among indices >= `from` (first on ties).
        [[nodiscard]] std::size_t nearest_index (const Point2 &p, std::size_t from = 0) const;

        /// Waypoints from index `from` onward; keeps at least two waypoints.
        [[nodiscard]] GlobalPath suffix (std::size_t from) const;

        friend bool operator== (const GlobalPath &a, const GlobalPath &b) { return a.waypoints_ == b.waypoints_; }

      private:
        std::vector<Point2> waypoints_;
        std::vector<double> arc_;
    };

    /// p* coincides with the circle center, so it cannot define a direction.
    class DegenerateHeading : public std::runtime_error
    {
      public:
        DegenerateHeading () : std::runtime_error ("heading target coincides with the circle center") {}
    };

    /// Direction from the circle at `depth` to the center two steps ahead in the previous chain.
    [[nodiscard]] std::optional<Vector2> consistent_heading (const CirclePath *previous, std::size_t depth, const Circle &circle);

    /// Index of the first waypoint at least ||robot - center|| + radius away from the robot; the last one if none is.
    [[nodiscard]] std::size_t lookahead_index (const GlobalPath &global, const Point2 &robot_pos, const Circle &circle);

    /// Direction from the circle center to the look-ahead waypoint. Throws DegenerateHeading.
    [[nodiscard]] Vector2 greedy_heading (const GlobalPath &global, const Point2 &robot_pos, const Circle &circle);

    enum class PathVariant
    {
        consistent,
        greedy,
    };

    [[nodiscard]] std::string_view to_string (PathVariant v) noexcept;

    struct PathCost
    {
        double local_length{0.0};
        double reconnect_distance{0.0}; ///< ||end - p*||
        double remaining_global{0.0};   ///< global arc length from p* to the end
        double weight{1.0};
        std::size_t anchor_index{0};    ///< index of p*

        [[nodiscard]] double total () const noexcept { return (local_length + reconnect_distance) * weight + remaining_global; }
    };

    [[nodiscard]] PathCost path_cost (const CirclePath &path, const GlobalPath &global, double weight);

    struct PathSelection
    {
        PathVariant chosen;
        PathCost consistent_cost;
        PathCost greedy_cost;
    };

    /// argmin of the weighted costs; ties keep the consistent chain.
    [[nodiscard]] PathSelection select_path (const CirclePath &consistent, const CirclePath &greedy, const GlobalPath &global,
                                             const PlannerParams &params);

    struct DualPlanResult
    {
        ChainResult consistent; ///< not run (expansions == 0, no path) on the first cycle
        ChainResult greedy;
        bool consistent_ran{false};
        std::optional<PathVariant> chosen;
        std::optional<PathCost> consistent_cost;
        std::optional<PathCost> greedy_cost;

        [[nodiscard]] bool ok () const noexcept { return chosen.has_value (); }
        /// The chosen chain; only valid when ok().
        [[nodiscard]] const CirclePath &path () const;
    };

    [[nodiscard]] DualPlanResult plan_dual (const ObstacleCloud &cloud, const Pose2 &robot_pose, const CirclePath *previous,
                                            const GlobalPath &global, const PlannerParams &params,
                                            std::size_t node_budget = kDefaultNodeBudget);

} // namespace fescr
