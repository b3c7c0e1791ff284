#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "emwave/network.hpp"

namespace emwave {

struct ScenarioSpec {
  std::string name = "scenario";
  /// Target system-wide PV fraction of dispatched generation, in [0, 1].
  double penetration = 0.0;
  /// Per-bus siting weights; empty means uniform. Buses absent from a
  /// non-empty map get weight 0. Weights must be non-negative.
  std::map<std::string, double> region_weights;
  std::uint64_t seed = 0;
};

/// Reassigns per-bus pv_fraction so that
///   sum(pv_fraction * p_mech) / sum(p_mech) == penetration  (within 1e-9)
/// with pv proportional to the siting weights (water-filling: buses whose
/// proportional share exceeds 1 are clipped and the remainder respread).
/// Each bus's inertia becomes inertia_h * (1 - pv_fraction), floored at
/// h_floor. Injections, voltages, positions and branches are unchanged.
Network apply_pv_scenario(const Network& net, const ScenarioSpec& spec,
                          double h_floor = kHFloor);

}  // namespace emwave
