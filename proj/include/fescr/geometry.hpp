#pragma once
/**
 * @file   geometry.hpp
 * @brief  Planar primitives and the per-circle formulas used by the planner.
 *
 * Everything here is a value type or a pure function. Angles are radians,
 * lengths meters. Signed angles are reported in (-pi, pi].
 */

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace fescr
{
    inline constexpr double kPi = std::numbers::pi;
    inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

    /// Raised when a value type is built from inputs that break its invariants.
    class InvalidArgument : public std::invalid_argument
    {
      public:
        using std::invalid_argument::invalid_argument;
    };

    /// Wrap an angle to (-pi, pi].
    [[nodiscard]] double normalize_angle (double angle) noexcept;

    /// Shortest signed rotation taking `from` onto `to`, in (-pi, pi].
    [[nodiscard]] double angle_diff (double to, double from) noexcept;

    struct Vector2
    {
        double dx{0.0};
        double dy{0.0};

        [[nodiscard]] double norm () const noexcept { return std::sqrt (dx * dx + dy * dy); }
        [[nodiscard]] double squared_norm () const noexcept { return dx * dx + dy * dy; }
        /// Only meaningful when norm() > 0.
        [[nodiscard]] double angle () const noexcept { return std::atan2 (dy, dx); }
        [[nodiscard]] double dot (const Vector2 &o) const noexcept { return dx * o.dx + dy * o.dy; }
        [[nodiscard]] double cross (const Vector2 &o) const noexcept { return dx * o.dy - dy * o.dx; }

        [[nodiscard]] constexpr Vector2 operator* (double s) const noexcept { return {dx * s, dy * s}; }
        [[nodiscard]] constexpr Vector2 operator+ (const Vector2 &o) const noexcept { return {dx + o.dx, dy + o.dy}; }
        [[nodiscard]] constexpr Vector2 operator- (const Vector2 &o) const noexcept { return {dx - o.dx, dy - o.dy}; }

        [[nodiscard]] static Vector2 from_polar (double length, double angle) noexcept
        {
            return {length * std::cos (angle), length * std::sin (angle)};
        }

        friend constexpr bool operator== (const Vector2 &, const Vector2 &) = default;
    };

    struct Point2
    {
        double x{0.0};
        double y{0.0};

        [[nodiscard]] bool finite () const noexcept { return std::isfinite (x) && std::isfinite (y); }

        [[nodiscard]] constexpr Vector2 operator- (const Point2 &o) const noexcept { return {x - o.x, y - o.y}; }
        [[nodiscard]] constexpr Point2 operator+ (const Vector2 &v) const noexcept { return {x + v.dx, y + v.dy}; }
        [[nodiscard]] constexpr Point2 operator- (const Vector2 &v) const noexcept { return {x - v.dx, y - v.dy}; }

        friend constexpr bool operator== (const Point2 &, const Point2 &) = default;
    };

    [[nodiscard]] inline double distance (const Point2 &a, const Point2 &b) noexcept { return (a - b).norm (); }

    /// Center + radius. Radius is strictly positive and finite.
    class Circle
    {
      public:
        Circle (Point2 center, double radius);

        [[nodiscard]] const Point2 &center () const noexcept { return center_; }
        [[nodiscard]] double radius () const noexcept { return radius_; }

        /// True when `p` is inside by more than `tolerance` (boundary contact does not count).
        [[nodiscard]] bool strictly_contains (const Point2 &p, double tolerance = 1e-9) const noexcept
        {
            return distance (center_, p) < radius_ - tolerance;
        }

        friend bool operator== (const Circle &, const Circle &) = default;

      private:
        Point2 center_;
        double radius_;
    };

    /// Rectangular robot footprint; length runs along the heading.
    class Footprint
    {
      public:
        Footprint (double width, double length);

        [[nodiscard]] double width () const noexcept { return width_; }
        [[nodiscard]] double length () const noexcept { return length_; }
        [[nodiscard]] double half_width () const noexcept { return 0.5 * width_; }
        [[nodiscard]] double circumscribed_radius () const noexcept { return circumscribed_; }

        friend bool operator== (const Footprint &, const Footprint &) = default;

      private:
        double width_;
        double length_;
        double circumscribed_;
    };

    [[nodiscard]] inline double circumscribed_radius (const Footprint &f) noexcept { return f.circumscribed_radius (); }

    /**
     * @brief LiDAR obstacle points in the world frame.
     *
     * Points are kept in scan order. A uniform bucket grid is built alongside
     * so nearest-point queries do not need to touch every point; the answers
     * are identical to a flat scan because the same distances are compared.
     */
    class ObstacleCloud
    {
      public:
        ObstacleCloud () = default;
        explicit ObstacleCloud (std::vector<Point2> points, double cell_size = 0.25);

        [[nodiscard]] std::span<const Point2> points () const noexcept { return points_; }
        [[nodiscard]] bool empty () const noexcept { return points_.empty (); }
        [[nodiscard]] std::size_t size () const noexcept { return points_.size (); }

        /// Distance to the nearest point, +inf when empty.
        [[nodiscard]] double nearest_distance (const Point2 &p) const noexcept;

        /// min(nearest_distance(p), limit); stops searching once `limit` is certain.
        [[nodiscard]] double nearest_distance_capped (const Point2 &p, double limit) const noexcept;

      private:
        [[nodiscard]] double scan_cell_sq (long cx, long cy, const Point2 &p, double best_sq) const noexcept;

        std::vector<Point2> points_;
        // grid over the point bounding box; cell_start_ has one extra sentinel entry
        double cell_size_{0.25};
        double min_x_{0.0}, min_y_{0.0};
        long cols_{0}, rows_{0};
        std::vector<std::size_t> cell_start_;
        std::vector<Point2> sorted_;
    };

    /// Flat exhaustive scan; the reference the indexed query must agree with.
    [[nodiscard]] double nearest_obstacle_distance_scan (std::span<const Point2> points, const Point2 &p) noexcept;

    /// min over the cloud of ||o - p||; +inf for an empty cloud.
    [[nodiscard]] inline double nearest_obstacle_distance (const ObstacleCloud &cloud, const Point2 &p) noexcept
    {
        return cloud.nearest_distance (p);
    }

    /**
     * Half-width of the admissible child arcs around the approach axis.
     * pi above the circumscribed radius, 0 below half the width, and
     * pi/2 - acos((2r - w) / (2R - w)) in between.
     */
    [[nodiscard]] double pivot_angle (double radius, const Footprint &f) noexcept;

    /// Whether `child`, seen from `parent`'s center, subtends the heading angle. Inclusive and wrap-safe.
    [[nodiscard]] bool heading_overlap (const Circle &parent, const Circle &child, double heading_angle) noexcept;

    /// Unsigned angle in [0, pi] between (child_center - parent_center) and h.
    [[nodiscard]] double angular_deviation (const Point2 &parent_center, const Point2 &child_center, const Vector2 &h) noexcept;

    /// Distance from `p` to the closed segment [a, b].
    [[nodiscard]] double point_segment_distance (const Point2 &p, const Point2 &a, const Point2 &b) noexcept;

    /// Length of the polyline through `pts`.
    [[nodiscard]] double polyline_length (std::span<const Point2> pts) noexcept;

} // namespace fescr
