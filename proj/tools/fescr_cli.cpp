// Command-line harness: run scenarios, replay planner inputs for latency.

#include "fescr/bench.hpp"
#include "fescr/io.hpp"
#include "fescr/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace
{
    namespace fs = std::filesystem;
    using fescr::io::json;

    constexpr int kExitUsage = 64;
    constexpr int kExitIo = 74;

    int exit_code (fescr::Outcome o)
    {
        switch (o)
        {
        case fescr::Outcome::reached:
            return 0;
        case fescr::Outcome::deadlock:
            return 2;
        case fescr::Outcome::collision:
            return 3;
        case fescr::Outcome::timeout:
            return 4;
        }
        return 1;
    }

    struct CommonArgs
    {
        std::string scenario;
        std::string config;
        std::vector<std::string> overrides;
        std::vector<std::string> without;
    };

    fescr::io::RunConfig load_run_config (const CommonArgs &args)
    {
        fescr::io::RunConfig cfg = args.config.empty () ? fescr::io::RunConfig{} : fescr::io::load_config (args.config);
        for (const auto &o : args.overrides)
            fescr::io::apply_override (cfg, o);
        return cfg;
    }

    class IoFailure : public std::runtime_error
    {
      public:
        using std::runtime_error::runtime_error;
    };

    std::ofstream open_out (const fs::path &p)
    {
        std::ofstream out (p);
        if (!out)
            throw IoFailure ("cannot write " + p.string ());
        return out;
    }

    int cmd_run (const CommonArgs &args, const std::string &out_dir, std::size_t snapshot_every)
    {
        const auto cfg = load_run_config (args);
        const auto file = fescr::io::load_scenario (args.scenario);
        const std::set<std::string> excluded (args.without.begin (), args.without.end ());
        const fescr::Scenario scenario = file.to_scenario (cfg, excluded);

        const auto result = fescr::run_episode (scenario, cfg.planner, cfg.controller);

        std::error_code ec;
        fs::create_directories (out_dir, ec);
        if (ec)
            throw IoFailure ("cannot create " + out_dir + ": " + ec.message ());
        const fs::path dir (out_dir);

        {
            auto trace = open_out (dir / "trace.jsonl");
            for (std::size_t i = 0; i < result.cycles.size (); ++i)
                trace << fescr::io::trace_record (i, result.cycles[i]).dump () << '\n';
        }
        {
            auto summary = open_out (dir / "summary.json");
            summary << fescr::io::summary_json (file.name, cfg, result.metrics).dump (2) << '\n';
        }
        if (snapshot_every > 0)
        {
            std::vector<fescr::Point2> driven;
            for (std::size_t i = 0; i < result.cycles.size (); ++i)
            {
                driven.push_back (result.trajectory[i].position);
                const bool last = i + 1 == result.cycles.size ();
                if (i % snapshot_every != 0 && !last)
                    continue;
                const auto &chain = result.snapshots[i];
                fescr::SnapshotView view{&scenario.world, &scenario.global_path, result.trajectory[i], cfg.planner.footprint,
                                         chain ? &*chain : nullptr, driven, i};
                auto svg = open_out (dir / ("snap_" + std::to_string (i) + ".svg"));
                fescr::write_snapshot_svg (svg, view);
            }
        }

        const auto &m = result.metrics;
        std::cout << file.name << " L=" << cfg.planner.chain_length << " outcome=" << to_string (m.outcome) << " cycles=" << m.cycles
                  << " path_length=" << m.path_length << " path_time=" << m.path_time << '\n';
        return exit_code (m.outcome);
    }

    int cmd_bench (const CommonArgs &args, std::size_t reps, std::vector<std::size_t> lengths, const std::string &out_file)
    {
        if (reps == 0)
            throw fescr::io::ParseError ("--reps", "reps", "repetitions must be at least 1");
        auto cfg = load_run_config (args);
        const auto file = fescr::io::load_scenario (args.scenario);
        const std::set<std::string> excluded (args.without.begin (), args.without.end ());
        // an explicit L override pins a single configuration
        for (const auto &o : args.overrides)
            if (o.rfind ("L=", 0) == 0 || o.rfind ("chain_length=", 0) == 0)
                lengths = {cfg.planner.chain_length};

        json report = json::object ();
        report["scenario"] = file.name;
        report["repetitions"] = reps;
        report["runs"] = json::array ();
        for (const std::size_t L : lengths)
        {
            auto run_cfg = cfg;
            run_cfg.planner.chain_length = L;
            run_cfg.validate ();
            const fescr::Scenario scenario = file.to_scenario (run_cfg, excluded);
            fescr::EpisodeOptions opts;
            opts.record_inputs = true;
            opts.keep_snapshots = false;
            const auto episode = fescr::run_episode (scenario, run_cfg.planner, run_cfg.controller, opts);
            const auto stats = fescr::replay_planner (episode.inputs, run_cfg.planner, reps);

            json row = json::object ();
            row["L"] = L;
            row["outcome"] = std::string (to_string (episode.metrics.outcome));
            row["cycles"] = episode.inputs.size ();
            row["samples"] = stats.samples;
            row["mean_ms"] = stats.mean_ms;
            row["p50_ms"] = stats.p50_ms;
            row["p99_ms"] = stats.p99_ms;
            row["max_ms"] = stats.max_ms;
            row["average_local_path_length_m"] = episode.metrics.mean_local_path_length;
            report["runs"].push_back (row);
        }

        const std::string text = report.dump (2);
        if (out_file.empty ())
            std::cout << text << '\n';
        else
            open_out (out_file) << text << '\n';
        return 0;
    }
} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Circular-region local planner: scenario runner and latency bench"};
    app.require_subcommand (1);

    CommonArgs run_args;
    std::string out_dir = "out";
    std::size_t snapshot_every = 50;
    auto *run = app.add_subcommand ("run", "Run one closed-loop episode");
    run->add_option ("scenario", run_args.scenario, "Scenario JSON file")->required ()->check (CLI::ExistingFile);
    run->add_option ("--config", run_args.config, "Config JSON file")->check (CLI::ExistingFile);
    run->add_option ("--out", out_dir, "Output directory");
    run->add_option ("--set", run_args.overrides, "Override a config key, key=value (repeatable)");
    run->add_option ("--snapshot-every", snapshot_every, "Write an SVG every N cycles (0 disables)");
    run->add_option ("--without", run_args.without, "Drop the rectangle obstacle with this id (repeatable)");

    CommonArgs bench_args;
    std::size_t reps = 10;
    std::vector<std::size_t> lengths{3, 5, 7};
    std::string bench_out;
    auto *bench = app.add_subcommand ("bench", "Replay recorded planner inputs and report latency");
    bench->add_option ("scenario", bench_args.scenario, "Scenario JSON file")->required ()->check (CLI::ExistingFile);
    bench->add_option ("--config", bench_args.config, "Config JSON file")->check (CLI::ExistingFile);
    bench->add_option ("--reps", reps, "Replay repetitions");
    bench->add_option ("--set", bench_args.overrides, "Override a config key, key=value (repeatable)");
    bench->add_option ("--lengths", lengths, "Chain lengths to benchmark")->delimiter (',');
    bench->add_option ("--without", bench_args.without, "Drop the rectangle obstacle with this id (repeatable)");
    bench->add_option ("--out", bench_out, "Write the JSON report here instead of stdout");

    try
    {
        app.parse (argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit (e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit (e);
        return kExitUsage;
    }

    try
    {
        if (*run)
            return cmd_run (run_args, out_dir, snapshot_every);
        return cmd_bench (bench_args, reps, lengths, bench_out);
    }
    catch (const fescr::io::ParseError &e)
    {
        std::cerr << "error: " << e.what () << '\n';
        return kExitUsage;
    }
    catch (const fescr::InvalidArgument &e)
    {
        std::cerr << "error: " << e.what () << '\n';
        return kExitUsage;
    }
    catch (const IoFailure &e)
    {
        std::cerr << "error: " << e.what () << '\n';
        return kExitIo;
    }
}
