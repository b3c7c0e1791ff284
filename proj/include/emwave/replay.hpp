#pragma once

#include <span>
#include <vector>

#include "emwave/field.hpp"
#include "emwave/measurement.hpp"

namespace emwave {

/// Interpolated snapshots of the measured frequency-deviation field, one
/// per requested frame time: trace values are linearly interpolated in time
/// at each sensor, then IDW-mapped onto the grid. All frames share the grid
/// and mask. Throws Error(time_out_of_range) when a frame time falls
/// outside any trace's coverage.
std::vector<ScalarField> replay_frames(std::span<const FrequencyTrace> traces,
                                       const GridSpec& grid,
                                       std::span<const double> frame_times,
                                       double power = 2.0);

}  // namespace emwave
