#pragma once
/**
 * @file   search.hpp
 * @brief  Greedy depth-first chain construction with backtracking.
 *
 * Children of the current circle are split into three priority sets by
 * heading overlap and radius, the best child of the first nonempty set is
 * taken, and a node without untried children is removed so its parent can
 * try its next child. The first chain reaching the requested length wins.
 */

#include "fescr/expansion.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace fescr
{
    /// Planar robot pose. The yaw is normalized to (-pi, pi] on construction.
    struct Pose2
    {
        Point2 position{};
        double yaw{0.0};

        Pose2 () = default;
        Pose2 (Point2 p, double yaw_) : position (p), yaw (normalize_angle (yaw_)) {}

        friend bool operator== (const Pose2 &, const Pose2 &) = default;
    };

    /// Ordered chain of circles; circles[0] is centered on the robot.
    struct CirclePath
    {
        std::vector<Circle> circles;
        /// Approach angle used when expanding circles[i] (robot yaw for the root).
        std::vector<double> approach_angles;
        /// pivot_angle(circles[i].radius) at expansion time.
        std::vector<double> pivot_angles;

        [[nodiscard]] std::size_t size () const noexcept { return circles.size (); }
        [[nodiscard]] std::vector<Point2> centers () const;
        /// Polyline length through the centers.
        [[nodiscard]] double length () const;
        [[nodiscard]] const Point2 &end () const { return circles.back ().center (); }

        friend bool operator== (const CirclePath &, const CirclePath &) = default;
    };

    enum class PlanFailure
    {
        no_path_found,
        budget_exhausted,
        root_blocked,
    };

    [[nodiscard]] std::string_view to_string (PlanFailure f) noexcept;

    struct ChainResult
    {
        std::optional<CirclePath> path;
        PlanFailure failure{PlanFailure::no_path_found}; ///< meaningful only when !path
        std::size_t expansions{0};

        [[nodiscard]] bool ok () const noexcept { return path.has_value (); }
    };

    struct Partition
    {
        std::vector<CandidateCircle> q1; ///< full comfort radius, overlapping the heading
        std::vector<CandidateCircle> q2; ///< smaller, overlapping the heading
        std::vector<CandidateCircle> q3; ///< not overlapping the heading
    };

    inline constexpr double kComfortTolerance = 1e-9;
    inline constexpr std::size_t kDefaultNodeBudget = 10'000;

    [[nodiscard]] Partition partition_children (std::span<const CandidateCircle> children, const Circle &parent, const Vector2 &h,
                                                const PlannerParams &params);

    /**
     * Pick from the first nonempty set: least angular deviation for q1 and q3,
     * largest radius for q2. Ties fall to the smaller deviation, then the
     * smaller boundary angle.
     */
    [[nodiscard]] std::optional<CandidateCircle> select_child (std::span<const CandidateCircle> q1, std::span<const CandidateCircle> q2,
                                                               std::span<const CandidateCircle> q3, const Circle &parent, const Vector2 &h);

    /**
     * Heading for expanding the circle at `depth` (0 = root). An empty or
     * zero result makes the search fall back to the approach direction.
     */
    using HeadingProvider = std::function<std::optional<Vector2> (std::size_t depth, const Circle &circle)>;

    [[nodiscard]] ChainResult find_chain (const ObstacleCloud &cloud, const Pose2 &robot_pose, const HeadingProvider &heading,
                                          const PlannerParams &params, std::size_t node_budget = kDefaultNodeBudget);

} // namespace fescr
