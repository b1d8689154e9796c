#include "fescr/expansion.hpp"

#include <algorithm>
#include <cmath>

namespace fescr
{
    void PlannerParams::validate () const
    {
        if (!(comfort_radius > footprint.half_width ()) || !std::isfinite (comfort_radius))
            throw InvalidArgument ("comfort_radius must exceed half the footprint width");
        if (!(theta_step > 0.0 && theta_step < 0.25 * kPi))
            throw InvalidArgument ("theta_step must lie in (0, pi/4)");
        if (chain_length < 2)
            throw InvalidArgument ("chain_length must be at least 2");
        if (!(consistent_weight > 0.0 && consistent_weight <= 1.0))
            throw InvalidArgument ("consistent_weight must lie in (0, 1]");
    }

    Circle make_root_circle (const ObstacleCloud &cloud, const Point2 &robot_center, const PlannerParams &params)
    {
        if (!robot_center.finite ())
            throw InvalidArgument ("robot center must be finite");
        const double d = cloud.nearest_distance_capped (robot_center, params.comfort_radius);
        if (d <= 0.0)
            throw RootBlocked{};
        return Circle{robot_center, d};
    }

    std::vector<double> allowed_center_angles (const Circle &parent, double approach_angle, const PlannerParams &params)
    {
        const double pivot = pivot_angle (parent.radius (), params.footprint);
        const double step = params.theta_step;
        std::vector<double> angles;

        // front and back arcs cover the whole boundary
        if (pivot >= 0.5 * kPi)
        {
            const auto count = static_cast<long> (std::ceil (kTwoPi / step));
            angles.reserve (static_cast<std::size_t> (count));
            for (long k = 0; k < count; ++k)
                angles.push_back (normalize_angle (approach_angle + static_cast<double> (k) * step));
        }
        else
        {
            const auto k_max = static_cast<long> (std::floor (pivot / step + 1e-12));
            for (const double axis : {approach_angle, approach_angle + kPi})
                for (long k = -k_max; k <= k_max; ++k)
                    angles.push_back (normalize_angle (axis + static_cast<double> (k) * step));
        }

        std::sort (angles.begin (), angles.end ());
        angles.erase (std::unique (angles.begin (), angles.end (), [] (double a, double b) { return std::abs (a - b) < 1e-12; }),
                      angles.end ());
        // -pi and pi can only both appear after normalization rounding
        if (angles.size () > 1 && std::abs (angle_diff (angles.front (), angles.back ())) < 1e-12)
            angles.pop_back ();
        return angles;
    }

    std::vector<CandidateCircle> enumerate_children (const Circle &parent, std::size_t parent_index, double approach_angle,
                                                     const ObstacleCloud &cloud, std::span<const Circle> occupied,
                                                     const PlannerParams &params)
    {
        const double min_radius = params.footprint.half_width ();
        std::vector<CandidateCircle> out;
        for (const double angle : allowed_center_angles (parent, approach_angle, params))
        {
            const Point2 center = parent.center () + Vector2::from_polar (parent.radius (), angle);
            const double radius = cloud.nearest_distance_capped (center, params.comfort_radius);
            if (radius < min_radius)
                continue; // too small for the robot
            const bool inside_chain =
                std::any_of (occupied.begin (), occupied.end (), [&] (const Circle &c) { return c.strictly_contains (center); });
            if (inside_chain)
                continue;
            out.push_back ({Circle{center, radius}, angle, parent_index});
        }
        return out;
    }

} // namespace fescr
