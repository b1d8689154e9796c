#include "fescr/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace fescr::io
{
    ParseError::ParseError (std::string file, std::string where, const std::string &what)
        : std::runtime_error (file + ": " + where + ": " + what), file_ (std::move (file)), where_ (std::move (where))
    {
    }

    void RunConfig::validate () const
    {
        planner.validate ();
        controller.validate ();
        lidar.validate (planner);
        if (!(dt > 0.0))
            throw InvalidArgument ("dt must be positive");
    }

    // ---------------------------------------------------------------------
    // config

    namespace
    {
        struct ConfigField
        {
            std::string key;
            std::function<json (const RunConfig &)> get;
            std::function<void (RunConfig &, const json &)> set;
        };

        double as_number (const json &v)
        {
            if (!v.is_number ())
                throw InvalidArgument ("expected a number");
            const double d = v.get<double> ();
            if (!std::isfinite (d))
                throw InvalidArgument ("expected a finite number");
            return d;
        }

        std::uint64_t as_count (const json &v)
        {
            if (v.is_number_unsigned ())
                return v.get<std::uint64_t> ();
            if (v.is_number_integer () && v.get<std::int64_t> () >= 0)
                return static_cast<std::uint64_t> (v.get<std::int64_t> ());
            throw InvalidArgument ("expected a non-negative integer");
        }

        // Footprint is immutable; rebuild it when either side changes.
        void set_width (RunConfig &c, double w) { c.planner.footprint = Footprint{w, c.planner.footprint.length ()}; }
        void set_length (RunConfig &c, double l) { c.planner.footprint = Footprint{c.planner.footprint.width (), l}; }

        const std::vector<ConfigField> &fields ()
        {
            static const std::vector<ConfigField> table = {
                {"robot_width", [] (const RunConfig &c) { return json (c.planner.footprint.width ()); },
                 [] (RunConfig &c, const json &v) { set_width (c, as_number (v)); }},
                {"robot_length", [] (const RunConfig &c) { return json (c.planner.footprint.length ()); },
                 [] (RunConfig &c, const json &v) { set_length (c, as_number (v)); }},
                {"comfort_radius", [] (const RunConfig &c) { return json (c.planner.comfort_radius); },
                 [] (RunConfig &c, const json &v) { c.planner.comfort_radius = as_number (v); }},
                {"theta_step", [] (const RunConfig &c) { return json (c.planner.theta_step); },
                 [] (RunConfig &c, const json &v) { c.planner.theta_step = as_number (v); }},
                {"chain_length", [] (const RunConfig &c) { return json (c.planner.chain_length); },
                 [] (RunConfig &c, const json &v) { c.planner.chain_length = as_count (v); }},
                {"consistent_weight", [] (const RunConfig &c) { return json (c.planner.consistent_weight); },
                 [] (RunConfig &c, const json &v) { c.planner.consistent_weight = as_number (v); }},
                {"k_p", [] (const RunConfig &c) { return json (c.controller.k_p); },
                 [] (RunConfig &c, const json &v) { c.controller.k_p = as_number (v); }},
                {"eps_min", [] (const RunConfig &c) { return json (c.controller.eps_min); },
                 [] (RunConfig &c, const json &v) { c.controller.eps_min = as_number (v); }},
                {"eps_max", [] (const RunConfig &c) { return json (c.controller.eps_max); },
                 [] (RunConfig &c, const json &v) { c.controller.eps_max = as_number (v); }},
                {"v_min", [] (const RunConfig &c) { return json (c.controller.v_min); },
                 [] (RunConfig &c, const json &v) { c.controller.v_min = as_number (v); }},
                {"v_max", [] (const RunConfig &c) { return json (c.controller.v_max); },
                 [] (RunConfig &c, const json &v) { c.controller.v_max = as_number (v); }},
                {"omega_max", [] (const RunConfig &c) { return json (c.controller.omega_max); },
                 [] (RunConfig &c, const json &v) { c.controller.omega_max = as_number (v); }},
                {"speed_normalization",
                 [] (const RunConfig &c) {
                     return json (c.controller.normalization == SpeedNormalization::verbatim ? "verbatim" : "doubled_comfort");
                 },
                 [] (RunConfig &c, const json &v) {
                     if (v == "verbatim")
                         c.controller.normalization = SpeedNormalization::verbatim;
                     else if (v == "doubled_comfort")
                         c.controller.normalization = SpeedNormalization::doubled_comfort;
                     else
                         throw InvalidArgument ("expected \"verbatim\" or \"doubled_comfort\"");
                 }},
                {"dt", [] (const RunConfig &c) { return json (c.dt); }, [] (RunConfig &c, const json &v) { c.dt = as_number (v); }},
                {"lidar_beams", [] (const RunConfig &c) { return json (c.lidar.beam_count); },
                 [] (RunConfig &c, const json &v) { c.lidar.beam_count = as_count (v); }},
                {"lidar_range", [] (const RunConfig &c) { return json (c.lidar.max_range); },
                 [] (RunConfig &c, const json &v) { c.lidar.max_range = as_number (v); }},
                {"lidar_noise_stddev", [] (const RunConfig &c) { return json (c.lidar.noise_stddev); },
                 [] (RunConfig &c, const json &v) { c.lidar.noise_stddev = as_number (v); }},
                {"lidar_noise_seed", [] (const RunConfig &c) { return json (c.lidar.noise_seed); },
                 [] (RunConfig &c, const json &v) { c.lidar.noise_seed = as_count (v); }},
            };
            return table;
        }

        const ConfigField *find_field (const std::string &key)
        {
            const std::string k = key == "L" ? "chain_length" : key;
            for (const auto &f : fields ())
                if (f.key == k)
                    return &f;
            return nullptr;
        }
    } // namespace

    const std::vector<std::string> &config_keys ()
    {
        static const std::vector<std::string> keys = [] {
            std::vector<std::string> k;
            for (const auto &f : fields ())
                k.push_back (f.key);
            return k;
        }();
        return keys;
    }

    json to_json (const RunConfig &cfg)
    {
        json j = json::object ();
        for (const auto &f : fields ())
            j[f.key] = f.get (cfg);
        return j;
    }

    RunConfig config_from_json (const json &j, const std::string &file)
    {
        if (!j.is_object ())
            throw ParseError (file, "/", "config must be a JSON object");
        RunConfig cfg;
        // width and length are checked against each other, so build the footprint in one go
        try
        {
            const double w = j.contains ("robot_width") ? as_number (j["robot_width"]) : cfg.planner.footprint.width ();
            const double l = j.contains ("robot_length") ? as_number (j["robot_length"]) : cfg.planner.footprint.length ();
            cfg.planner.footprint = Footprint{w, l};
        }
        catch (const InvalidArgument &e)
        {
            throw ParseError (file, j.contains ("robot_width") ? "/robot_width" : "/robot_length", e.what ());
        }
        for (const auto &[key, value] : j.items ())
        {
            const ConfigField *f = find_field (key);
            if (f == nullptr || key == "L")
                throw ParseError (file, "/" + key, "unknown config key");
            if (key == "robot_width" || key == "robot_length")
                continue;
            try
            {
                f->set (cfg, value);
            }
            catch (const InvalidArgument &e)
            {
                throw ParseError (file, "/" + key, e.what ());
            }
        }
        try
        {
            cfg.validate ();
        }
        catch (const InvalidArgument &e)
        {
            throw ParseError (file, "/", e.what ());
        }
        return cfg;
    }

    RunConfig load_config (const std::filesystem::path &path) { return config_from_json (read_json (path), path.string ()); }

    void apply_override (RunConfig &cfg, const std::string &assignment)
    {
        const auto eq = assignment.find ('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError ("--set", assignment, "expected key=value");
        const std::string key = assignment.substr (0, eq);
        const std::string text = assignment.substr (eq + 1);
        const ConfigField *f = find_field (key);
        if (f == nullptr)
            throw ParseError ("--set", key, "unknown config key");
        json value = json::parse (text, nullptr, false);
        if (value.is_discarded ())
            value = text; // bare strings such as speed_normalization=verbatim
        try
        {
            f->set (cfg, value);
            cfg.validate ();
        }
        catch (const InvalidArgument &e)
        {
            throw ParseError ("--set", key, e.what ());
        }
    }

    // ---------------------------------------------------------------------
    // scenario

    World ScenarioFile::world (const std::set<std::string> &excluded) const
    {
        std::vector<Segment> segs = walls;
        for (const auto &r : rectangles)
        {
            if (excluded.contains (r.id))
                continue;
            const Point2 a{r.min.x, r.min.y}, b{r.max.x, r.min.y}, c{r.max.x, r.max.y}, d{r.min.x, r.max.y};
            segs.insert (segs.end (), {{a, b}, {b, c}, {c, d}, {d, a}});
        }
        return World{std::move (segs)};
    }

    Scenario ScenarioFile::to_scenario (const RunConfig &cfg, const std::set<std::string> &excluded) const
    {
        Scenario s;
        s.name = name;
        s.world = world (excluded);
        s.start = start;
        s.global_path = GlobalPath{global_path};
        s.goal_tolerance = goal_tolerance;
        s.lidar = cfg.lidar;
        s.dt = cfg.dt;
        s.max_sim_time = max_sim_time;
        s.validate (cfg.planner);
        return s;
    }

    namespace
    {
        json point_json (const Point2 &p) { return json::array ({p.x, p.y}); }

        class Reader
        {
          public:
            Reader (const std::string &file) : file_ (file) {}

            [[noreturn]] void fail (const std::string &where, const std::string &what) const { throw ParseError (file_, where, what); }

            void only_keys (const json &obj, const std::string &where, std::initializer_list<std::string_view> allowed) const
            {
                if (!obj.is_object ())
                    fail (where, "expected an object");
                for (const auto &[key, _] : obj.items ())
                    if (std::find (allowed.begin (), allowed.end (), key) == allowed.end ())
                        fail (where + "/" + key, "unknown key");
            }

            const json &require (const json &obj, const std::string &where, const std::string &key) const
            {
                if (!obj.contains (key))
                    fail (where + "/" + key, "missing required field");
                return obj.at (key);
            }

            double number (const json &v, const std::string &where) const
            {
                if (!v.is_number () || !std::isfinite (v.get<double> ()))
                    fail (where, "expected a finite number");
                return v.get<double> ();
            }

            Point2 point (const json &v, const std::string &where) const
            {
                if (!v.is_array () || v.size () != 2)
                    fail (where, "expected [x, y]");
                return {number (v[0], where + "/0"), number (v[1], where + "/1")};
            }

          private:
            std::string file_;
        };
    } // namespace

    json to_json (const ScenarioFile &s)
    {
        json j = json::object ();
        j["name"] = s.name;
        if (!s.description.empty ())
            j["description"] = s.description;
        json walls = json::array ();
        for (const auto &w : s.walls)
            walls.push_back ({{"from", point_json (w.a)}, {"to", point_json (w.b)}});
        j["walls"] = walls;
        json rects = json::array ();
        for (const auto &r : s.rectangles)
        {
            json o = {{"min", point_json (r.min)}, {"max", point_json (r.max)}};
            if (!r.id.empty ())
                o["id"] = r.id;
            rects.push_back (o);
        }
        j["rectangles"] = rects;
        j["start"] = {{"x", s.start.position.x}, {"y", s.start.position.y}, {"yaw", s.start.yaw}};
        json path = json::array ();
        for (const auto &p : s.global_path)
            path.push_back (point_json (p));
        j["global_path"] = path;
        j["goal_tolerance"] = s.goal_tolerance;
        j["max_sim_time"] = s.max_sim_time;
        return j;
    }

    ScenarioFile scenario_from_json (const json &j, const std::string &file)
    {
        const Reader r (file);
        r.only_keys (j, "", {"name", "description", "walls", "rectangles", "start", "global_path", "goal_tolerance", "max_sim_time"});

        ScenarioFile s;
        if (j.contains ("name"))
        {
            if (!j["name"].is_string ())
                r.fail ("/name", "expected a string");
            s.name = j["name"].get<std::string> ();
        }
        if (j.contains ("description"))
        {
            if (!j["description"].is_string ())
                r.fail ("/description", "expected a string");
            s.description = j["description"].get<std::string> ();
        }

        if (j.contains ("walls"))
        {
            const json &walls = j["walls"];
            if (!walls.is_array ())
                r.fail ("/walls", "expected an array");
            for (std::size_t i = 0; i < walls.size (); ++i)
            {
                const std::string where = "/walls/" + std::to_string (i);
                r.only_keys (walls[i], where, {"from", "to"});
                Segment seg{r.point (r.require (walls[i], where, "from"), where + "/from"),
                            r.point (r.require (walls[i], where, "to"), where + "/to")};
                if (seg.a == seg.b)
                    r.fail (where, "wall endpoints coincide");
                s.walls.push_back (seg);
            }
        }

        if (j.contains ("rectangles"))
        {
            const json &rects = j["rectangles"];
            if (!rects.is_array ())
                r.fail ("/rectangles", "expected an array");
            for (std::size_t i = 0; i < rects.size (); ++i)
            {
                const std::string where = "/rectangles/" + std::to_string (i);
                r.only_keys (rects[i], where, {"id", "min", "max"});
                RectObstacle rect;
                if (rects[i].contains ("id"))
                {
                    if (!rects[i]["id"].is_string ())
                        r.fail (where + "/id", "expected a string");
                    rect.id = rects[i]["id"].get<std::string> ();
                }
                rect.min = r.point (r.require (rects[i], where, "min"), where + "/min");
                rect.max = r.point (r.require (rects[i], where, "max"), where + "/max");
                if (!(rect.min.x < rect.max.x && rect.min.y < rect.max.y))
                    r.fail (where, "min must be strictly below max on both axes");
                s.rectangles.push_back (rect);
            }
        }

        const json &start = r.require (j, "", "start");
        r.only_keys (start, "/start", {"x", "y", "yaw"});
        const double yaw = start.contains ("yaw") ? r.number (start["yaw"], "/start/yaw") : 0.0;
        s.start = Pose2{{r.number (r.require (start, "/start", "x"), "/start/x"), r.number (r.require (start, "/start", "y"), "/start/y")}, yaw};

        const json &path = r.require (j, "", "global_path");
        if (!path.is_array ())
            r.fail ("/global_path", "expected an array of [x, y]");
        for (std::size_t i = 0; i < path.size (); ++i)
            s.global_path.push_back (r.point (path[i], "/global_path/" + std::to_string (i)));
        if (s.global_path.size () < 2)
            r.fail ("/global_path", "needs at least 2 waypoints, got " + std::to_string (s.global_path.size ()));
        for (std::size_t i = 1; i < s.global_path.size (); ++i)
            if (s.global_path[i] == s.global_path[i - 1])
                r.fail ("/global_path/" + std::to_string (i), "repeats the previous waypoint");

        if (j.contains ("goal_tolerance"))
        {
            s.goal_tolerance = r.number (j["goal_tolerance"], "/goal_tolerance");
            if (!(s.goal_tolerance > 0.0))
                r.fail ("/goal_tolerance", "must be positive");
        }
        if (j.contains ("max_sim_time"))
        {
            s.max_sim_time = r.number (j["max_sim_time"], "/max_sim_time");
            if (!(s.max_sim_time > 0.0))
                r.fail ("/max_sim_time", "must be positive");
        }
        return s;
    }

    ScenarioFile load_scenario (const std::filesystem::path &path) { return scenario_from_json (read_json (path), path.string ()); }

    json read_json (const std::filesystem::path &path)
    {
        std::ifstream in (path);
        if (!in)
            throw ParseError (path.string (), "-", "cannot open file");
        std::stringstream buf;
        buf << in.rdbuf ();
        const std::string text = buf.str ();
        try
        {
            return json::parse (text);
        }
        catch (const json::parse_error &e)
        {
            const auto upto = std::min<std::size_t> (e.byte, text.size ());
            const auto line = 1 + std::count (text.begin (), text.begin () + static_cast<std::ptrdiff_t> (upto), '\n');
            throw ParseError (path.string (), "line " + std::to_string (line), "malformed JSON");
        }
    }

    // ---------------------------------------------------------------------
    // records

    json trace_record (std::size_t cycle, const CycleRecord &rec)
    {
        json j = json::object ();
        j["cycle"] = cycle;
        j["t"] = rec.time;
        j["L"] = rec.achieved_length;
        j["local_path_length"] = rec.local_path_length;
        j["clearance"] = rec.clearance;
        j["v"] = rec.command.v;
        j["omega"] = rec.command.omega;
        j["variant"] = rec.variant ? json (std::string (to_string (*rec.variant))) : json (nullptr);
        j["expansions"] = rec.expansions;
        j["compute_ms"] = rec.compute_seconds * 1e3;
        return j;
    }

    json summary_json (const std::string &scenario, const RunConfig &cfg, const RunMetrics &m)
    {
        json j = json::object ();
        j["scenario"] = scenario;
        j["L"] = cfg.planner.chain_length;
        j["outcome"] = std::string (to_string (m.outcome));
        j["average_computation_time_ms"] = m.mean_compute_seconds * 1e3;
        j["average_local_path_length_m"] = m.mean_local_path_length;
        j["average_distance_to_obstacle_m"] = m.mean_clearance;
        j["average_forward_velocity_mps"] = m.mean_forward_velocity;
        j["average_angular_velocity_radps"] = m.mean_angular_speed;
        j["path_length_m"] = m.path_length;
        j["path_time_s"] = m.path_time;
        j["cycles"] = m.cycles;
        j["planning_failures"] = m.planning_failures;
        j["config"] = to_json (cfg);
        return j;
    }

} // namespace fescr::io
