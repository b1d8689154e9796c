#include "fescr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace fescr
{
    LatencyStats latency_stats (std::vector<double> samples_ms)
    {
        LatencyStats s;
        s.samples = samples_ms.size ();
        if (samples_ms.empty ())
            return s;
        std::sort (samples_ms.begin (), samples_ms.end ());
        const auto rank = [&] (double q) {
            const auto k = static_cast<std::size_t> (std::ceil (q * static_cast<double> (samples_ms.size ())));
            return samples_ms[std::clamp<std::size_t> (k, 1, samples_ms.size ()) - 1];
        };
        s.mean_ms = std::accumulate (samples_ms.begin (), samples_ms.end (), 0.0) / static_cast<double> (samples_ms.size ());
        s.p50_ms = rank (0.50);
        s.p99_ms = rank (0.99);
        s.max_ms = samples_ms.back ();
        return s;
    }

    LatencyStats replay_planner (const std::vector<PlannerInput> &inputs, const PlannerParams &params, std::size_t repetitions)
    {
        if (repetitions == 0)
            throw InvalidArgument ("repetitions must be at least 1");
        std::vector<double> samples;
        samples.reserve (inputs.size () * repetitions);
        for (std::size_t r = 0; r < repetitions; ++r)
            for (const auto &in : inputs)
            {
                const CirclePath *prev = in.previous ? &*in.previous : nullptr;
                const auto t0 = std::chrono::steady_clock::now ();
                [[maybe_unused]] const DualPlanResult plan = plan_dual (in.cloud, in.pose, prev, in.global, params);
                const auto t1 = std::chrono::steady_clock::now ();
                samples.push_back (std::chrono::duration<double, std::milli> (t1 - t0).count ());
            }
        return latency_stats (std::move (samples));
    }

} // namespace fescr
