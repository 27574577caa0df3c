#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "potts/image.hpp"

namespace potts {

/// Per-direction decomposition of the grid into maximal constant intervals of
/// the corresponding stack component along its lines.
struct DirectionalPartition {
    struct Interval {
        int direction;          // index into the model
        std::size_t start;      // row-major index of the first pixel
        std::size_t length;     // pixels start, start+stride, ...
        std::ptrdiff_t stride;  // row-major offset of one direction step
    };

    int width = 0, height = 0;
    std::vector<Interval> intervals;
};

/// Label map; labels are dense in 0..segment_count-1, assigned in row-major
/// first-encounter order.
struct Partition {
    int width = 0, height = 0;
    std::vector<int> labels;
    int segment_count = 0;
};

DirectionalPartition induced_directional_partition(const SplitStack& stack,
                                                   const DirectionModel& model);

/// Equivalence classes of "connected by a chain of intervals", via union-find.
Partition merge_to_partition(const DirectionalPartition& dp, int width, int height);

/// Piecewise-constant image: on each segment, the mean over all pixels and
/// all stack components.
std::pair<Image, Partition> project(const SplitStack& stack, const DirectionModel& model);

}  // namespace potts
