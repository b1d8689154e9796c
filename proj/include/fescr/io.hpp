#pragma once
/**
 * @file   io.hpp
 * @brief  JSON config and scenario files, trace/summary records.
 *
 * Both file kinds are flat, human-editable JSON. Unknown keys are rejected
 * and every validation error names the offending field as a JSON pointer.
 */

#include "fescr/simulator.hpp"

#include <filesystem>
#include <json.hpp>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fescr::io
{
    using nlohmann::json;

    /// Parse or validation failure addressed by file, and by line or field.
    class ParseError : public std::runtime_error
    {
      public:
        ParseError (std::string file, std::string where, const std::string &what);

        [[nodiscard]] const std::string &file () const noexcept { return file_; }
        [[nodiscard]] const std::string &where () const noexcept { return where_; }

      private:
        std::string file_;
        std::string where_;
    };

    struct RunConfig
    {
        PlannerParams planner{};
        ControllerParams controller{};
        LidarConfig lidar{};
        double dt{0.05};

        void validate () const;
    };

    /// All recognised config keys, in serialization order.
    [[nodiscard]] const std::vector<std::string> &config_keys ();

    [[nodiscard]] json to_json (const RunConfig &cfg);
    /// Missing keys keep their defaults. Throws ParseError with `file` as context.
    [[nodiscard]] RunConfig config_from_json (const json &j, const std::string &file = "<config>");
    [[nodiscard]] RunConfig load_config (const std::filesystem::path &path);

    /// Apply one `key=value` override; `L` is accepted for chain_length.
    void apply_override (RunConfig &cfg, const std::string &assignment);

    struct RectObstacle
    {
        std::string id;
        Point2 min;
        Point2 max;

        friend bool operator== (const RectObstacle &, const RectObstacle &) = default;
    };

    /// Scenario as written on disk; rectangles stay rectangles until expanded.
    struct ScenarioFile
    {
        std::string name;
        std::string description;
        std::vector<Segment> walls;
        std::vector<RectObstacle> rectangles;
        Pose2 start;
        std::vector<Point2> global_path;
        double goal_tolerance{0.3};
        double max_sim_time{300.0};

        /// Walls plus the four edges of every rectangle whose id is not excluded.
        [[nodiscard]] World world (const std::set<std::string> &excluded = {}) const;
        [[nodiscard]] Scenario to_scenario (const RunConfig &cfg, const std::set<std::string> &excluded = {}) const;

        friend bool operator== (const ScenarioFile &, const ScenarioFile &) = default;
    };

    [[nodiscard]] json to_json (const ScenarioFile &s);
    [[nodiscard]] ScenarioFile scenario_from_json (const json &j, const std::string &file = "<scenario>");
    [[nodiscard]] ScenarioFile load_scenario (const std::filesystem::path &path);

    /// Read and parse a JSON document; syntax errors report the line number.
    [[nodiscard]] json read_json (const std::filesystem::path &path);

    [[nodiscard]] json trace_record (std::size_t cycle, const CycleRecord &rec);
    [[nodiscard]] json summary_json (const std::string &scenario, const RunConfig &cfg, const RunMetrics &m);

} // namespace fescr::io
