#pragma once

#include <vector>

#include "emwave/network.hpp"

namespace emwave {

struct ChainParams {
  int n = 2;
  double spacing = 100.0;
  double inertia_h = 4.0;
  double damping_d = 1.0;
  double susceptance_b = 10.0;
  double voltage = 1.0;
  /// Uniform per-unit transfer injected at bus 0 and withdrawn at bus n-1;
  /// 0 leaves every injection at zero.
  double flow = 0.0;
  double f0 = 60.0;
};

/// n buses on a line at uniform spacing (y = 0), n-1 identical branches.
/// Bus ids are "b0".."b{n-1}".
Network build_chain(const ChainParams& p);

/// Axis-aligned rectangle scaling inertia_h by `h_multiplier` for every bus
/// inside it (inclusive bounds).
struct RegionScale {
  double x_min, x_max, y_min, y_max;
  double h_multiplier;
};

struct LatticeParams {
  int rows = 2;
  int cols = 2;
  double spacing = 100.0;
  double inertia_h = 4.0;
  double damping_d = 1.0;
  double susceptance_b = 10.0;
  double voltage = 1.0;
  /// Locally balanced generation: every bus gets p_mech = p_load = gen, so
  /// the equilibrium stays flat while PV penetration accounting has
  /// something to displace.
  double gen = 1.0;
  double f0 = 60.0;
  std::vector<RegionScale> inertia_regions;
};

/// rows x cols buses on a regular grid with 4-neighbor branches. Bus k at
/// (row r, col c), k = r*cols + c, id "b{k}", position (c*spacing, r*spacing).
Network build_lattice(const LatticeParams& p);

}  // namespace emwave
