#pragma once

#include "fescr/simulator.hpp"

#include <vector>

namespace fescr
{
    struct LatencyStats
    {
        double mean_ms{0.0};
        double p50_ms{0.0};
        double p99_ms{0.0};
        double max_ms{0.0};
        std::size_t samples{0};
    };

    /// Nearest-rank percentiles over the samples (milliseconds).
    [[nodiscard]] LatencyStats latency_stats (std::vector<double> samples_ms);

    /// Re-run plan_dual on every recorded input `repetitions` times and time each call.
    [[nodiscard]] LatencyStats replay_planner (const std::vector<PlannerInput> &inputs, const PlannerParams &params, std::size_t repetitions);

} // namespace fescr
