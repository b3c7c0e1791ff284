#pragma once

#include "emwave/detector.hpp"
#include "emwave/field.hpp"
#include "emwave/locate.hpp"
#include "emwave/simulation.hpp"
#include "emwave/speed.hpp"

namespace emwave::reference {

/// Serial reference implementations of the parallel kernels: plain loops,
/// no OpenMP, same per-element arithmetic. Kept for testing (the suite
/// asserts bit-identical agreement with the parallel paths) and for the
/// emwave_bench comparison.

TrajectorySet simulate(const Network& net, const Disturbance& dist,
                       const SimConfig& cfg);

ScalarField interpolate_points(std::span<const SamplePoint> samples,
                               const GridSpec& grid, double power = 2.0,
                               std::optional<double> max_radius = {});

SpeedField speed_field(const ScalarField& tdoa_field, double min_grad = 1e-6);

LocationResult locate_event(const TdoaSamples& samples, const GridSpec& grid);

}  // namespace emwave::reference
