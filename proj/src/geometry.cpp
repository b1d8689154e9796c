#include "fescr/geometry.hpp"

#include <algorithm>
#include <string>

namespace fescr
{
    double normalize_angle (double angle) noexcept
    {
        double a = std::remainder (angle, kTwoPi); // [-pi, pi]
        if (a <= -kPi)
            a += kTwoPi;
        return a;
    }

    double angle_diff (double to, double from) noexcept { return normalize_angle (to - from); }

    Circle::Circle (Point2 center, double radius) : center_ (center), radius_ (radius)
    {
        if (!center.finite ())
            throw InvalidArgument ("circle center must be finite");
        if (!(radius > 0.0) || !std::isfinite (radius))
            throw InvalidArgument ("circle radius must be positive and finite, got " + std::to_string (radius));
    }

    Footprint::Footprint (double width, double length) : width_ (width), length_ (length)
    {
        if (!(width > 0.0) || !std::isfinite (width) || !std::isfinite (length) || !(width <= length))
            throw InvalidArgument ("footprint requires 0 < width <= length");
        circumscribed_ = std::sqrt ((0.5 * width) * (0.5 * width) + (0.5 * length) * (0.5 * length));
    }

    // ---------------------------------------------------------------------
    // ObstacleCloud

    namespace
    {
        constexpr long kMaxCellsPerAxis = 1024;
    }

    ObstacleCloud::ObstacleCloud (std::vector<Point2> points, double cell_size) : points_ (std::move (points)), cell_size_ (cell_size)
    {
        if (!(cell_size > 0.0))
            throw InvalidArgument ("cloud cell size must be positive");
        for (const auto &p : points_)
            if (!p.finite ())
                throw InvalidArgument ("obstacle points must be finite");
        if (points_.empty ())
            return;

        auto [mnx, mxx] = std::minmax_element (points_.begin (), points_.end (), [] (auto &a, auto &b) { return a.x < b.x; });
        auto [mny, mxy] = std::minmax_element (points_.begin (), points_.end (), [] (auto &a, auto &b) { return a.y < b.y; });
        min_x_ = mnx->x;
        min_y_ = mny->y;
        const double span = std::max (mxx->x - min_x_, mxy->y - min_y_);
        if (span / cell_size_ >= static_cast<double> (kMaxCellsPerAxis))
            cell_size_ = span / static_cast<double> (kMaxCellsPerAxis - 1);
        cols_ = static_cast<long> ((mxx->x - min_x_) / cell_size_) + 1;
        rows_ = static_cast<long> ((mxy->y - min_y_) / cell_size_) + 1;

        const auto cell_of = [&] (const Point2 &p) {
            const long cx = std::min (cols_ - 1, static_cast<long> ((p.x - min_x_) / cell_size_));
            const long cy = std::min (rows_ - 1, static_cast<long> ((p.y - min_y_) / cell_size_));
            return static_cast<std::size_t> (cy * cols_ + cx);
        };

        // counting sort by cell
        cell_start_.assign (static_cast<std::size_t> (cols_ * rows_) + 1, 0);
        for (const auto &p : points_)
            ++cell_start_[cell_of (p) + 1];
        for (std::size_t i = 1; i < cell_start_.size (); ++i)
            cell_start_[i] += cell_start_[i - 1];
        sorted_.resize (points_.size ());
        std::vector<std::size_t> cursor (cell_start_.begin (), cell_start_.end () - 1);
        for (const auto &p : points_)
            sorted_[cursor[cell_of (p)]++] = p;
    }

    double ObstacleCloud::scan_cell_sq (long cx, long cy, const Point2 &p, double best_sq) const noexcept
    {
        const auto idx = static_cast<std::size_t> (cy * cols_ + cx);
        for (std::size_t i = cell_start_[idx]; i < cell_start_[idx + 1]; ++i)
            best_sq = std::min (best_sq, (sorted_[i] - p).squared_norm ());
        return best_sq;
    }

    double ObstacleCloud::nearest_distance_capped (const Point2 &p, double limit) const noexcept
    {
        if (points_.empty ())
            return limit;

        const double max_x = min_x_ + static_cast<double> (cols_) * cell_size_;
        const double max_y = min_y_ + static_cast<double> (rows_) * cell_size_;
        // every stored point lies within this box, so a limit reaching its far corner sees them all
        const double far_dx = std::max (std::abs (p.x - min_x_), std::abs (p.x - max_x));
        const double far_dy = std::max (std::abs (p.y - min_y_), std::abs (p.y - max_y));
        if (limit >= std::hypot (far_dx, far_dy))
            return std::min (limit, nearest_obstacle_distance_scan (points_, p));

        const auto to_cell = [this] (double v, double origin, long count) {
            const double c = std::floor ((v - origin) / cell_size_);
            return static_cast<long> (std::clamp (c, -1.0, static_cast<double> (count)));
        };
        const long x0 = std::max (0L, to_cell (p.x - limit, min_x_, cols_));
        const long x1 = std::min (cols_ - 1, to_cell (p.x + limit, min_x_, cols_));
        const long y0 = std::max (0L, to_cell (p.y - limit, min_y_, rows_));
        const long y1 = std::min (rows_ - 1, to_cell (p.y + limit, min_y_, rows_));

        // compare squared distances, one sqrt at the end
        double best_sq = std::numeric_limits<double>::infinity ();
        const double limit_sq = limit * limit;
        for (long cy = y0; cy <= y1; ++cy)
        {
            const double ly = min_y_ + static_cast<double> (cy) * cell_size_;
            const double gap_y = std::max ({0.0, ly - p.y, p.y - (ly + cell_size_)});
            const double gap_y_sq = gap_y * gap_y;
            for (long cx = x0; cx <= x1; ++cx)
            {
                const double lx = min_x_ + static_cast<double> (cx) * cell_size_;
                const double gap_x = std::max ({0.0, lx - p.x, p.x - (lx + cell_size_)});
                const double gap_sq = gap_x * gap_x + gap_y_sq;
                if (gap_sq > std::min (best_sq, limit_sq) * (1.0 + 1e-12))
                    continue;
                best_sq = scan_cell_sq (cx, cy, p, best_sq);
            }
        }
        return std::min (limit, std::sqrt (best_sq));
    }

    double ObstacleCloud::nearest_distance (const Point2 &p) const noexcept
    {
        if (points_.empty ())
            return std::numeric_limits<double>::infinity ();
        // grow the search radius until a point is found strictly inside it
        double limit = 2.0 * cell_size_;
        for (;;)
        {
            const double d = nearest_distance_capped (p, limit);
            if (d < limit)
                return d;
            if (std::isinf (limit))
                return d;
            limit = (limit > 1e6) ? std::numeric_limits<double>::infinity () : 2.0 * limit;
        }
    }

    double nearest_obstacle_distance_scan (std::span<const Point2> points, const Point2 &p) noexcept
    {
        double best = std::numeric_limits<double>::infinity ();
        for (const auto &o : points)
            best = std::min (best, distance (o, p));
        return best;
    }

    // ---------------------------------------------------------------------

    double pivot_angle (double radius, const Footprint &f) noexcept
    {
        const double rc = f.circumscribed_radius ();
        const double w = f.width ();
        if (radius > rc)
            return kPi;
        if (radius < 0.5 * w)
            return 0.0;
        const double ratio = std::clamp ((2.0 * radius - w) / (2.0 * rc - w), 0.0, 1.0);
        return 0.5 * kPi - std::acos (ratio);
    }

    bool heading_overlap (const Circle &parent, const Circle &child, double heading_angle) noexcept
    {
        const double child_angle = (child.center () - parent.center ()).angle ();
        const double half_width = std::atan (child.radius () / parent.radius ());
        return std::abs (angle_diff (heading_angle, child_angle)) <= half_width;
    }

    double angular_deviation (const Point2 &parent_center, const Point2 &child_center, const Vector2 &h) noexcept
    {
        const Vector2 link = child_center - parent_center;
        const double c = link.dot (h) / (link.norm () * h.norm ());
        return std::acos (std::clamp (c, -1.0, 1.0));
    }

    double point_segment_distance (const Point2 &p, const Point2 &a, const Point2 &b) noexcept
    {
        const Vector2 ab = b - a;
        const double len2 = ab.squared_norm ();
        if (len2 == 0.0)
            return distance (p, a);
        const double t = std::clamp ((p - a).dot (ab) / len2, 0.0, 1.0);
        return distance (p, a + ab * t);
    }

    double polyline_length (std::span<const Point2> pts) noexcept
    {
        double total = 0.0;
        for (std::size_t i = 1; i < pts.size (); ++i)
            total += distance (pts[i - 1], pts[i]);
        return total;
    }

} // namespace fescr
