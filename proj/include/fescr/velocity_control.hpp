#pragma once
/**
 * @file   velocity_control.hpp
 * @brief  Proportional yaw control with radius-scaled speed and yaw-error gating.
 */

#include "fescr/expansion.hpp"
#include "fescr/search.hpp"

namespace fescr
{
    enum class SpeedNormalization
    {
        /// s = (2r - w) / (R_comfort - w)
        verbatim,
        /// s = (2r - w) / (2 R_comfort - w); non-default alternative
        doubled_comfort,
    };

    struct ControllerParams
    {
        double k_p{2.0};
        double eps_min{0.2};
        double eps_max{0.4};
        double v_min{0.2};
        double v_max{1.0};
        double omega_max{0.8};
        SpeedNormalization normalization{SpeedNormalization::verbatim};

        void validate () const;
    };

    struct VelocityCommand
    {
        double v{0.0};     ///< m/s, negative when reversing
        double omega{0.0}; ///< rad/s

        friend bool operator== (const VelocityCommand &, const VelocityCommand &) = default;
    };

    /// Normalized first-circle radius, clamped to [0, 1].
    [[nodiscard]] double scaling_factor (double first_radius, const PlannerParams &planner,
                                         SpeedNormalization norm = SpeedNormalization::verbatim) noexcept;

    /// Yaw-error threshold eps(s).
    [[nodiscard]] double yaw_threshold (double s, const ControllerParams &ctrl) noexcept;
    /// Cruise speed v_R(s).
    [[nodiscard]] double cruise_speed (double s, const ControllerParams &ctrl) noexcept;

    /**
     * Command toward `target`. With `allow_reverse` set and the target in the
     * rear half-plane, the robot backs up: the desired heading is flipped by pi
     * and the speed is negated.
     */
    [[nodiscard]] VelocityCommand compute_command (const Pose2 &pose, const Point2 &target, double first_radius, const PlannerParams &planner,
                                                   const ControllerParams &ctrl, bool allow_reverse = false);

    /**
     * Reverse is only used when the root could not pivot freely and the chain's
     * first child sits in the rear arc.
     */
    [[nodiscard]] bool reverse_enabled (const CirclePath &path);

    /// Command for a planned chain: target circles[1], speed from circles[0].
    [[nodiscard]] VelocityCommand command_for_path (const Pose2 &pose, const CirclePath &path, const PlannerParams &planner,
                                                    const ControllerParams &ctrl);

} // namespace fescr
