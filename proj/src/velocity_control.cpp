#include "fescr/velocity_control.hpp"

#include <algorithm>
#include <cmath>

namespace fescr
{
    void ControllerParams::validate () const
    {
        if (!(eps_min < eps_max))
            throw InvalidArgument ("eps_min must be below eps_max");
        if (!(v_min > 0.0 && v_min < v_max))
            throw InvalidArgument ("controller requires 0 < v_min < v_max");
        if (!(k_p > 0.0))
            throw InvalidArgument ("k_p must be positive");
        if (!(omega_max > 0.0))
            throw InvalidArgument ("omega_max must be positive");
    }

    double scaling_factor (double first_radius, const PlannerParams &planner, SpeedNormalization norm) noexcept
    {
        const double w = planner.footprint.width ();
        const double denom = norm == SpeedNormalization::verbatim ? planner.comfort_radius - w : 2.0 * planner.comfort_radius - w;
        if (!(denom > 0.0))
            return 1.0;
        return std::clamp ((2.0 * first_radius - w) / denom, 0.0, 1.0);
    }

    double yaw_threshold (double s, const ControllerParams &ctrl) noexcept { return ctrl.eps_min + s * (ctrl.eps_max - ctrl.eps_min); }

    double cruise_speed (double s, const ControllerParams &ctrl) noexcept { return ctrl.v_min + s * (ctrl.v_max - ctrl.v_min); }

    VelocityCommand compute_command (const Pose2 &pose, const Point2 &target, double first_radius, const PlannerParams &planner,
                                     const ControllerParams &ctrl, bool allow_reverse)
    {
        const Vector2 to_target = target - pose.position;
        if (!(to_target.norm () > 0.0))
            throw InvalidArgument ("target coincides with the robot position");

        double desired = to_target.angle ();
        double direction = 1.0;
        if (allow_reverse && std::abs (angle_diff (desired, pose.yaw)) > 0.5 * kPi)
        {
            desired = normalize_angle (desired + kPi);
            direction = -1.0;
        }

        const double yaw_error = angle_diff (desired, pose.yaw);
        const double s = scaling_factor (first_radius, planner, ctrl.normalization);

        VelocityCommand cmd;
        cmd.omega = std::clamp (ctrl.k_p * yaw_error, -ctrl.omega_max, ctrl.omega_max);
        cmd.v = std::abs (yaw_error) > yaw_threshold (s, ctrl) ? 0.0 : direction * cruise_speed (s, ctrl);
        return cmd;
    }

    bool reverse_enabled (const CirclePath &path)
    {
        if (path.size () < 2 || path.pivot_angles.empty () || path.pivot_angles[0] >= kPi)
            return false;
        const double link = (path.circles[1].center () - path.circles[0].center ()).angle ();
        return std::abs (angle_diff (link, path.approach_angles[0])) > 0.5 * kPi;
    }

    VelocityCommand command_for_path (const Pose2 &pose, const CirclePath &path, const PlannerParams &planner, const ControllerParams &ctrl)
    {
        if (path.size () < 2)
            throw InvalidArgument ("chain must contain a first child circle");
        return compute_command (pose, path.circles[1].center (), path.circles[0].radius (), planner, ctrl, reverse_enabled (path));
    }

} // namespace fescr
