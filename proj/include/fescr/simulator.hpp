#pragma once
/**
 * @file   simulator.hpp
 * @brief  Deterministic 2D world: segment walls, ray-cast LiDAR, unicycle
 *         kinematics and the closed plan -> control -> step loop.
 */

#include "fescr/heading_path.hpp"
#include "fescr/velocity_control.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fescr
{
    struct Segment
    {
        Point2 a;
        Point2 b;

        friend bool operator== (const Segment &, const Segment &) = default;
    };

    class World
    {
      public:
        World () = default;
        explicit World (std::vector<Segment> segments);

        [[nodiscard]] const std::vector<Segment> &segments () const noexcept { return segments_; }
        /// Distance from `p` to the closest wall, +inf for an empty world.
        [[nodiscard]] double clearance (const Point2 &p) const noexcept;

      private:
        std::vector<Segment> segments_;
    };

    struct LidarConfig
    {
        std::size_t beam_count{720};
        double max_range{10.0};
        double angle_min{-kPi}; ///< relative to the robot yaw
        double span{kTwoPi};
        double noise_stddev{0.0}; ///< Gaussian range noise, off by default
        std::uint64_t noise_seed{0};

        void validate (const PlannerParams &params) const;
    };

    struct Scenario
    {
        std::string name;
        World world;
        Pose2 start;
        GlobalPath global_path{{{0.0, 0.0}, {1.0, 0.0}}};
        double goal_tolerance{0.3};
        LidarConfig lidar;
        double dt{0.05};
        double max_sim_time{300.0};

        void validate (const PlannerParams &params) const;
    };

    /// Ray-cast one scan in the world frame; beams without a hit contribute nothing.
    [[nodiscard]] ObstacleCloud raycast_scan (const World &world, const Pose2 &pose, const LidarConfig &cfg);

    /// As above, with Gaussian range noise drawn from `rng` when cfg.noise_stddev > 0.
    [[nodiscard]] ObstacleCloud raycast_scan (const World &world, const Pose2 &pose, const LidarConfig &cfg, std::mt19937_64 &rng);

    /// Exact unicycle integration over dt.
    [[nodiscard]] Pose2 step_kinematics (const Pose2 &pose, const VelocityCommand &cmd, double dt);

    /// Whether the oriented rectangle footprint at `pose` touches any wall.
    [[nodiscard]] bool footprint_collides (const World &world, const Pose2 &pose, const Footprint &footprint);

    enum class Outcome
    {
        reached,
        deadlock,
        collision,
        timeout,
    };

    [[nodiscard]] std::string_view to_string (Outcome o) noexcept;

    struct CycleRecord
    {
        double time{0.0};
        double compute_seconds{0.0};
        std::size_t achieved_length{0}; ///< circles in the chosen chain, 0 on failure
        double local_path_length{0.0};
        double clearance{0.0};
        VelocityCommand command{};
        std::optional<PathVariant> variant;
        std::size_t expansions{0};
        bool planned () const noexcept { return variant.has_value (); }
    };

    /// Everything plan_dual consumed in one cycle, kept for latency replay.
    struct PlannerInput
    {
        ObstacleCloud cloud;
        Pose2 pose;
        std::optional<CirclePath> previous;
        GlobalPath global;
    };

    struct RunMetrics
    {
        double mean_compute_seconds{0.0};
        double mean_local_path_length{0.0}; ///< over cycles that produced a chain
        double mean_clearance{0.0};
        double mean_forward_velocity{0.0};
        double mean_angular_speed{0.0}; ///< mean |omega|
        double path_length{0.0};
        double path_time{0.0};
        std::size_t cycles{0};
        std::size_t planning_failures{0};
        Outcome outcome{Outcome::timeout};
    };

    struct EpisodeOptions
    {
        bool record_inputs{false};
        bool keep_snapshots{true};
        std::size_t node_budget{kDefaultNodeBudget};
        double deadlock_failure_seconds{5.0};
        double stall_window_seconds{10.0};
        double stall_displacement{0.05};
    };

    struct EpisodeResult
    {
        std::vector<Pose2> trajectory;              ///< start pose plus one pose per step
        std::vector<std::optional<CirclePath>> snapshots; ///< chosen chain per cycle (empty when not kept)
        std::vector<CycleRecord> cycles;
        std::vector<PlannerInput> inputs;           ///< only with record_inputs
        RunMetrics metrics;
    };

    [[nodiscard]] RunMetrics summarize (const std::vector<CycleRecord> &cycles, const std::vector<Pose2> &trajectory, double dt,
                                        Outcome outcome);

    [[nodiscard]] EpisodeResult run_episode (const Scenario &scenario, const PlannerParams &params, const ControllerParams &ctrl,
                                             const EpisodeOptions &options = {});

} // namespace fescr
