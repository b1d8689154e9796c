#include "fescr/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace fescr
{
    World::World (std::vector<Segment> segments) : segments_ (std::move (segments))
    {
        for (std::size_t i = 0; i < segments_.size (); ++i)
        {
            const auto &s = segments_[i];
            if (!s.a.finite () || !s.b.finite ())
                throw InvalidArgument ("segment " + std::to_string (i) + " has a non-finite endpoint");
            if (s.a == s.b)
                throw InvalidArgument ("segment " + std::to_string (i) + " is degenerate");
        }
    }

    double World::clearance (const Point2 &p) const noexcept
    {
        double best = std::numeric_limits<double>::infinity ();
        for (const auto &s : segments_)
            best = std::min (best, point_segment_distance (p, s.a, s.b));
        return best;
    }

    void LidarConfig::validate (const PlannerParams &params) const
    {
        if (beam_count < 8)
            throw InvalidArgument ("lidar beam_count must be at least 8");
        if (!(max_range > params.comfort_radius))
            throw InvalidArgument ("lidar max_range must exceed comfort_radius");
        if (!(span > 0.0 && span <= kTwoPi))
            throw InvalidArgument ("lidar span must lie in (0, 2 pi]");
        if (!(noise_stddev >= 0.0))
            throw InvalidArgument ("lidar noise_stddev must be non-negative");
    }

    void Scenario::validate (const PlannerParams &params) const
    {
        if (!(dt > 0.0))
            throw InvalidArgument ("dt must be positive");
        if (!(max_sim_time > 0.0))
            throw InvalidArgument ("max_sim_time must be positive");
        if (!(goal_tolerance > 0.0))
            throw InvalidArgument ("goal_tolerance must be positive");
        if (!start.position.finite () || !std::isfinite (start.yaw))
            throw InvalidArgument ("start pose must be finite");
        if (distance (global_path.waypoints ().front (), start.position) > 2.0 * params.comfort_radius)
            throw InvalidArgument ("global path must start within 2 comfort radii of the start position");
        lidar.validate (params);
    }

    // ---------------------------------------------------------------------
    // sensing

    namespace
    {
        /// Ray parameter t >= 0 at which origin + t * dir meets the segment, or +inf.
        double ray_segment_hit (const Point2 &origin, const Vector2 &dir, const Segment &seg)
        {
            const Vector2 e = seg.b - seg.a;
            const double denom = dir.cross (e);
            if (denom == 0.0)
                return std::numeric_limits<double>::infinity (); // parallel, grazing hits are caught by the endpoints' neighbours
            const Vector2 w = seg.a - origin;
            const double t = w.cross (e) / denom;
            const double u = w.cross (dir) / denom;
            if (t < 0.0 || u < 0.0 || u > 1.0)
                return std::numeric_limits<double>::infinity ();
            return t;
        }

        ObstacleCloud scan_impl (const World &world, const Pose2 &pose, const LidarConfig &cfg, std::mt19937_64 *rng)
        {
            const bool full = cfg.span >= kTwoPi - 1e-12;
            const double increment = full ? cfg.span / static_cast<double> (cfg.beam_count)
                                          : cfg.span / static_cast<double> (cfg.beam_count - 1);
            std::normal_distribution<double> noise (0.0, cfg.noise_stddev > 0.0 ? cfg.noise_stddev : 1.0);

            std::vector<Point2> hits;
            hits.reserve (cfg.beam_count);
            for (std::size_t i = 0; i < cfg.beam_count; ++i)
            {
                const double bearing = pose.yaw + cfg.angle_min + static_cast<double> (i) * increment;
                const Vector2 dir{std::cos (bearing), std::sin (bearing)};
                double range = std::numeric_limits<double>::infinity ();
                for (const auto &seg : world.segments ())
                    range = std::min (range, ray_segment_hit (pose.position, dir, seg));
                if (range > cfg.max_range)
                    continue;
                if (rng != nullptr && cfg.noise_stddev > 0.0)
                    range = std::max (0.0, range + noise (*rng));
                hits.push_back (pose.position + dir * range);
            }
            return ObstacleCloud{std::move (hits)};
        }
    } // namespace

    ObstacleCloud raycast_scan (const World &world, const Pose2 &pose, const LidarConfig &cfg) { return scan_impl (world, pose, cfg, nullptr); }

    ObstacleCloud raycast_scan (const World &world, const Pose2 &pose, const LidarConfig &cfg, std::mt19937_64 &rng)
    {
        return scan_impl (world, pose, cfg, &rng);
    }

    // ---------------------------------------------------------------------
    // motion

    Pose2 step_kinematics (const Pose2 &pose, const VelocityCommand &cmd, double dt)
    {
        if (!(dt > 0.0))
            throw InvalidArgument ("dt must be positive");
        const double yaw = pose.yaw;
        const double yaw_next = yaw + cmd.omega * dt;
        Point2 p = pose.position;
        if (std::abs (cmd.omega) < 1e-9)
        {
            p.x += cmd.v * dt * std::cos (yaw);
            p.y += cmd.v * dt * std::sin (yaw);
        }
        else
        {
            const double r = cmd.v / cmd.omega;
            p.x += r * (std::sin (yaw_next) - std::sin (yaw));
            p.y += r * (std::cos (yaw) - std::cos (yaw_next));
        }
        return Pose2{p, yaw_next};
    }

    bool footprint_collides (const World &world, const Pose2 &pose, const Footprint &footprint)
    {
        const double hx = 0.5 * footprint.length ();
        const double hy = 0.5 * footprint.width ();
        const double c = std::cos (pose.yaw);
        const double s = std::sin (pose.yaw);
        const auto to_body = [&] (const Point2 &p) {
            const Vector2 d = p - pose.position;
            return Point2{c * d.dx + s * d.dy, -s * d.dx + c * d.dy};
        };

        for (const auto &seg : world.segments ())
        {
            // Liang-Barsky clip of the segment against the body-frame box
            const Point2 a = to_body (seg.a);
            const Point2 b = to_body (seg.b);
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            double t0 = 0.0;
            double t1 = 1.0;
            bool outside = false;
            const double p[4] = {-dx, dx, -dy, dy};
            const double q[4] = {a.x + hx, hx - a.x, a.y + hy, hy - a.y};
            for (int k = 0; k < 4 && !outside; ++k)
            {
                if (p[k] == 0.0)
                {
                    if (q[k] < 0.0)
                        outside = true;
                    continue;
                }
                const double t = q[k] / p[k];
                if (p[k] < 0.0)
                    t0 = std::max (t0, t);
                else
                    t1 = std::min (t1, t);
                if (t0 > t1)
                    outside = true;
            }
            if (!outside)
                return true;
        }
        return false;
    }

    // ---------------------------------------------------------------------
    // episode

    std::string_view to_string (Outcome o) noexcept
    {
        switch (o)
        {
        case Outcome::reached:
            return "reached";
        case Outcome::deadlock:
            return "deadlock";
        case Outcome::collision:
            return "collision";
        case Outcome::timeout:
            return "timeout";
        }
        return "unknown";
    }

    RunMetrics summarize (const std::vector<CycleRecord> &cycles, const std::vector<Pose2> &trajectory, double dt, Outcome outcome)
    {
        RunMetrics m;
        m.outcome = outcome;
        m.cycles = cycles.size ();
        std::size_t planned = 0;
        for (const auto &c : cycles)
        {
            m.mean_compute_seconds += c.compute_seconds;
            m.mean_clearance += c.clearance;
            m.mean_forward_velocity += c.command.v;
            m.mean_angular_speed += std::abs (c.command.omega);
            if (c.planned ())
            {
                m.mean_local_path_length += c.local_path_length;
                ++planned;
            }
        }
        m.planning_failures = cycles.size () - planned;
        if (!cycles.empty ())
        {
            const auto n = static_cast<double> (cycles.size ());
            m.mean_compute_seconds /= n;
            m.mean_clearance /= n;
            m.mean_forward_velocity /= n;
            m.mean_angular_speed /= n;
        }
        if (planned > 0)
            m.mean_local_path_length /= static_cast<double> (planned);

        for (std::size_t i = 1; i < trajectory.size (); ++i)
            m.path_length += distance (trajectory[i - 1].position, trajectory[i].position);
        m.path_time = static_cast<double> (trajectory.empty () ? 0 : trajectory.size () - 1) * dt;
        return m;
    }

    namespace
    {
        /// Advance the monotone progress index to the nearest waypoint within a short arc window ahead.
        std::size_t advance_progress (const GlobalPath &global, std::size_t progress, const Point2 &robot, double window)
        {
            const double limit = global.arc_length (progress) + window;
            std::size_t best = progress;
            double best_d = distance (global.waypoints ()[progress], robot);
            for (std::size_t i = progress + 1; i < global.size () && global.arc_length (i) <= limit; ++i)
            {
                const double d = distance (global.waypoints ()[i], robot);
                if (d < best_d)
                {
                    best_d = d;
                    best = i;
                }
            }
            return best;
        }
    } // namespace

    EpisodeResult run_episode (const Scenario &scenario, const PlannerParams &params, const ControllerParams &ctrl,
                               const EpisodeOptions &options)
    {
        params.validate ();
        ctrl.validate ();
        scenario.validate (params);

        EpisodeResult out;
        std::mt19937_64 rng (scenario.lidar.noise_seed);
        const double dt = scenario.dt;
        const auto failure_limit = static_cast<std::size_t> (std::ceil (options.deadlock_failure_seconds / dt - 1e-9));
        const auto stall_steps = static_cast<std::size_t> (std::ceil (options.stall_window_seconds / dt - 1e-9));
        const Point2 goal = scenario.global_path.back ();

        Pose2 pose = scenario.start;
        out.trajectory.push_back (pose);
        std::optional<CirclePath> previous;
        std::size_t progress = 0;
        std::size_t failure_streak = 0;
        Outcome outcome = Outcome::timeout;

        for (std::size_t step = 0;; ++step)
        {
            const double t = static_cast<double> (step) * dt;
            if (distance (pose.position, goal) <= scenario.goal_tolerance)
            {
                outcome = Outcome::reached;
                break;
            }
            if (t >= scenario.max_sim_time - 1e-12)
            {
                outcome = Outcome::timeout;
                break;
            }

            const ObstacleCloud cloud = raycast_scan (scenario.world, pose, scenario.lidar, rng);
            progress = advance_progress (scenario.global_path, progress, pose.position, 2.0 * params.comfort_radius);
            const GlobalPath remaining = scenario.global_path.suffix (progress);
            const CirclePath *prev = previous ? &*previous : nullptr;

            const auto t0 = std::chrono::steady_clock::now ();
            DualPlanResult plan = plan_dual (cloud, pose, prev, remaining, params, options.node_budget);
            const auto t1 = std::chrono::steady_clock::now ();

            if (options.record_inputs)
                out.inputs.push_back ({cloud, pose, previous, remaining});

            CycleRecord rec;
            rec.time = t;
            rec.compute_seconds = std::chrono::duration<double> (t1 - t0).count ();
            rec.clearance = std::min (scenario.world.clearance (pose.position), scenario.lidar.max_range);
            rec.expansions = plan.greedy.expansions + plan.consistent.expansions;
            if (plan.ok ())
            {
                const CirclePath &chosen = plan.path ();
                rec.variant = plan.chosen;
                rec.achieved_length = chosen.size ();
                rec.local_path_length = chosen.length ();
                const Point2 &goal = scenario.global_path.waypoints ().back ();
                const bool goal_covered = chosen.circles[0].strictly_contains (goal, 0.0) || chosen.circles[1].strictly_contains (goal, 0.0);
                if (goal_covered && distance (goal, pose.position) > 0.0)
                    // final approach
                    rec.command = compute_command (pose, goal, chosen.circles[0].radius (), params, ctrl, reverse_enabled (chosen));
                else
                    rec.command = command_for_path (pose, chosen, params, ctrl);
                previous = chosen;
                failure_streak = 0;
            }
            else
            {
                previous.reset ();
                ++failure_streak;
            }
            out.cycles.push_back (rec);
            if (options.keep_snapshots)
                out.snapshots.push_back (plan.ok () ? std::optional<CirclePath>{plan.path ()} : std::nullopt);

            pose = step_kinematics (pose, rec.command, dt);
            out.trajectory.push_back (pose);

            if (footprint_collides (scenario.world, pose, params.footprint))
            {
                outcome = Outcome::collision;
                break;
            }
            if (failure_streak >= failure_limit)
            {
                outcome = Outcome::deadlock;
                break;
            }
            const std::size_t n = out.trajectory.size ();
            if (n > stall_steps &&
                distance (out.trajectory[n - 1].position, out.trajectory[n - 1 - stall_steps].position) < options.stall_displacement)
            {
                outcome = Outcome::deadlock;
                break;
            }
        }

        out.metrics = summarize (out.cycles, out.trajectory, dt, outcome);
        return out;
    }

} // namespace fescr
