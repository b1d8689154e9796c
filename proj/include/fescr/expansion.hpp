#pragma once
/**
 * @file   expansion.hpp
 * @brief  Root circle construction and child enumeration on a parent boundary.
 */

#include "fescr/geometry.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fescr
{
    struct PlannerParams
    {
        Footprint footprint{0.75, 1.1};
        double comfort_radius{1.5};
        double theta_step{0.06};
        std::size_t chain_length{5};
        double consistent_weight{0.7};

        /// Throws InvalidArgument on the first broken invariant.
        void validate () const;
    };

    /// An obstacle point coincides with the robot center.
    class RootBlocked : public std::runtime_error
    {
      public:
        RootBlocked () : std::runtime_error ("obstacle point coincides with the robot center") {}
    };

    struct CandidateCircle
    {
        Circle circle;
        double boundary_angle; ///< absolute angle of the center on the parent boundary, (-pi, pi]
        std::size_t parent_index;
    };

    [[nodiscard]] Circle make_root_circle (const ObstacleCloud &cloud, const Point2 &robot_center, const PlannerParams &params);

    /**
     * Boundary angles a child center may occupy. Once the pivot angle reaches
     * pi/2 this is the grid approach + k * step over one revolution; otherwise the two
     * arcs approach + k * step and approach + pi + k * step with |k * step| no
     * larger than the pivot angle. Sorted ascending in (-pi, pi].
     */
    [[nodiscard]] std::vector<double> allowed_center_angles (const Circle &parent, double approach_angle, const PlannerParams &params);

    /// Candidates for every allowed angle, minus ones that are too small or sit strictly inside an occupied circle.
    [[nodiscard]] std::vector<CandidateCircle> enumerate_children (const Circle &parent, std::size_t parent_index, double approach_angle,
                                                                   const ObstacleCloud &cloud, std::span<const Circle> occupied,
                                                                   const PlannerParams &params);

} // namespace fescr
