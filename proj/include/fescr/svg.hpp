#pragma once

#include "fescr/simulator.hpp"

#include <optional>
#include <ostream>

namespace fescr
{
    /// Everything drawn in one snapshot.
    struct SnapshotView
    {
        const World *world{nullptr};
        const GlobalPath *global{nullptr};
        Pose2 pose;
        Footprint footprint{0.75, 1.1};
        const CirclePath *chain{nullptr}; ///< may be null on a failed cycle
        std::vector<Point2> trajectory;   ///< driven so far
        std::size_t cycle{0};
    };

    /**
     * Write a standalone SVG. World units map to 100 px per meter with y up.
     * Only the chain's circles are emitted as <circle> elements; the robot is
     * a <polygon>.
     */
    void write_snapshot_svg (std::ostream &out, const SnapshotView &view);

} // namespace fescr
