#include "fescr/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace fescr;
using fescr::io::json;
using fescr::io::ParseError;

namespace
{
    const std::filesystem::path kScenarios{FESCR_SCENARIO_DIR};

    json minimal_scenario ()
    {
        return json::parse (R"({
            "name": "mini",
            "walls": [{"from": [0, -2], "to": [10, -2]}],
            "rectangles": [{"id": "box", "min": [4, 1], "max": [5, 2]}],
            "start": {"x": 0, "y": 0, "yaw": 0.25},
            "global_path": [[0, 0], [5, 0], [9, 0]],
            "goal_tolerance": 0.5,
            "max_sim_time": 30
        })");
    }

    std::string where_of (const json &j)
    {
        try
        {
            (void)io::scenario_from_json (j, "x.json");
        }
        catch (const ParseError &e)
        {
            return e.where ();
        }
        return "";
    }
} // namespace

TEST (Config, DefaultsRoundTrip)
{
    const io::RunConfig def;
    const json j = io::to_json (def);
    EXPECT_EQ (j.size (), io::config_keys ().size ());
    EXPECT_EQ (j["comfort_radius"], 1.5);
    EXPECT_EQ (j["theta_step"], 0.06);
    EXPECT_EQ (j["chain_length"], 5);
    EXPECT_EQ (j["consistent_weight"], 0.7);
    EXPECT_EQ (j["k_p"], 2.0);
    EXPECT_EQ (j["omega_max"], 0.8);
    EXPECT_EQ (io::to_json (io::config_from_json (j)), j);
}

TEST (Config, BundledDefaultMatchesBuiltIn)
{
    const auto cfg = io::load_config (kScenarios.parent_path () / "config" / "default.json");
    EXPECT_EQ (io::to_json (cfg), io::to_json (io::RunConfig{}));
}

TEST (Config, UnknownKeyIsRejected)
{
    try
    {
        (void)io::config_from_json (json{{"comfort_radius", 1.2}, {"bogus", 1}}, "c.json");
        FAIL ();
    }
    catch (const ParseError &e)
    {
        EXPECT_EQ (e.where (), "/bogus");
    }
}

TEST (Config, InvalidValueNamesTheField)
{
    try
    {
        (void)io::config_from_json (json{{"theta_step", -1.0}}, "c.json");
        FAIL ();
    }
    catch (const ParseError &e)
    {
        EXPECT_NE (std::string (e.what ()).find ("theta_step"), std::string::npos);
    }
    EXPECT_THROW ((void)io::config_from_json (json{{"comfort_radius", "big"}}), ParseError);
    EXPECT_THROW ((void)io::config_from_json (json{{"robot_width", 2.0}}), ParseError);
}

TEST (Config, WidthAndLengthTogether)
{
    const auto cfg = io::config_from_json (json{{"robot_width", 1.5}, {"robot_length", 2.0}, {"comfort_radius", 2.0}});
    EXPECT_EQ (cfg.planner.footprint.width (), 1.5);
    EXPECT_EQ (cfg.planner.footprint.length (), 2.0);
}

TEST (Config, Overrides)
{
    io::RunConfig cfg;
    io::apply_override (cfg, "L=7");
    EXPECT_EQ (cfg.planner.chain_length, 7u);
    io::apply_override (cfg, "speed_normalization=doubled_comfort");
    EXPECT_EQ (cfg.controller.normalization, SpeedNormalization::doubled_comfort);
    io::apply_override (cfg, "v_max=0.8");
    EXPECT_EQ (cfg.controller.v_max, 0.8);
    EXPECT_THROW (io::apply_override (cfg, "L"), ParseError);
    EXPECT_THROW (io::apply_override (cfg, "nope=1"), ParseError);
    EXPECT_THROW (io::apply_override (cfg, "L=1"), ParseError);
    EXPECT_THROW (io::apply_override (cfg, "speed_normalization=fast"), ParseError);
}

TEST (Scenario, ParsesAndRoundTrips)
{
    const auto s = io::scenario_from_json (minimal_scenario ());
    EXPECT_EQ (s.name, "mini");
    ASSERT_EQ (s.walls.size (), 1u);
    ASSERT_EQ (s.rectangles.size (), 1u);
    EXPECT_EQ (s.rectangles[0].id, "box");
    EXPECT_EQ (s.start.yaw, 0.25);
    EXPECT_EQ (s.global_path.size (), 3u);
    EXPECT_EQ (s.goal_tolerance, 0.5);
    const auto again = io::scenario_from_json (io::to_json (s));
    EXPECT_EQ (again, s);
    EXPECT_EQ (io::to_json (again).dump (), io::to_json (s).dump ());
}

TEST (Scenario, RectanglesExpandAndCanBeExcluded)
{
    const auto s = io::scenario_from_json (minimal_scenario ());
    EXPECT_EQ (s.world ().segments ().size (), 5u);
    EXPECT_EQ (s.world ({"box"}).segments ().size (), 1u);
    const auto sc = s.to_scenario (io::RunConfig{});
    EXPECT_EQ (sc.global_path.size (), 3u);
    EXPECT_EQ (sc.max_sim_time, 30.0);
}

TEST (Scenario, ErrorsNameTheField)
{
    json j = minimal_scenario ();
    j["global_path"] = json::array ({json::array ({0, 0})});
    EXPECT_EQ (where_of (j), "/global_path");

    j = minimal_scenario ();
    j.erase ("start");
    EXPECT_EQ (where_of (j), "/start");

    j = minimal_scenario ();
    j["walls"][0]["to"] = json::array ({1});
    EXPECT_EQ (where_of (j), "/walls/0/to");

    j = minimal_scenario ();
    j["rectangles"][0]["max"] = json::array ({3, 3});
    EXPECT_EQ (where_of (j), "/rectangles/0");

    j = minimal_scenario ();
    j["extra"] = 1;
    EXPECT_EQ (where_of (j), "/extra");

    j = minimal_scenario ();
    j["global_path"][1] = json::array ({0, 0});
    EXPECT_EQ (where_of (j), "/global_path/1");

    j = minimal_scenario ();
    j["goal_tolerance"] = 0;
    EXPECT_EQ (where_of (j), "/goal_tolerance");
}

TEST (ReadJson, SyntaxErrorReportsLine)
{
    const auto path = std::filesystem::temp_directory_path () / "fescr_bad.json";
    {
        std::ofstream out (path);
        out << "{\n  \"name\": \"x\",\n  \"walls\": [,]\n}\n";
    }
    try
    {
        (void)io::read_json (path);
        FAIL ();
    }
    catch (const ParseError &e)
    {
        EXPECT_EQ (e.where (), "line 3");
    }
    std::filesystem::remove (path);
    EXPECT_THROW ((void)io::read_json ("/nonexistent/nowhere.json"), ParseError);
}

TEST (Scenario, BundledFilesLoad)
{
    for (const char *name : {"open_env.json", "obstacle_env.json", "narrow_corridor.json"})
    {
        const auto s = io::load_scenario (kScenarios / name);
        EXPECT_NO_THROW ((void)s.to_scenario (io::RunConfig{})) << name;
    }
    const auto obstacles = io::load_scenario (kScenarios / "obstacle_env.json");
    EXPECT_TRUE (std::any_of (obstacles.rectangles.begin (), obstacles.rectangles.end (),
                              [] (const io::RectObstacle &r) { return r.id == "marked"; }));
}

TEST (Records, TraceAndSummaryFields)
{
    CycleRecord rec;
    rec.time = 1.5;
    rec.achieved_length = 5;
    rec.local_path_length = 6.0;
    rec.clearance = 1.25;
    rec.command = {0.6, -0.1};
    rec.variant = PathVariant::consistent;
    rec.expansions = 8;
    rec.compute_seconds = 0.0005;
    const json t = io::trace_record (30, rec);
    EXPECT_EQ (t["cycle"], 30);
    EXPECT_EQ (t["variant"], "consistent");
    EXPECT_EQ (t["L"], 5);
    EXPECT_DOUBLE_EQ (t["compute_ms"].get<double> (), 0.5);
    rec.variant.reset ();
    EXPECT_TRUE (io::trace_record (0, rec)["variant"].is_null ());

    RunMetrics m;
    m.outcome = Outcome::reached;
    const json s = io::summary_json ("open_env", io::RunConfig{}, m);
    for (const char *key : {"average_computation_time_ms", "average_local_path_length_m", "average_distance_to_obstacle_m",
                            "average_forward_velocity_mps", "average_angular_velocity_radps", "path_length_m", "path_time_s", "outcome"})
        EXPECT_TRUE (s.contains (key)) << key;
    EXPECT_EQ (s["outcome"], "reached");
}
