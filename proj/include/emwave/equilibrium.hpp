#pragma once

#include <span>
#include <vector>

#include "emwave/network.hpp"

namespace emwave {

struct EquilibriumOptions {
  /// Per-bus power-balance residual target, per unit. The solver keeps
  /// polishing below this while the residual still improves, so the
  /// returned point is typically accurate to machine precision.
  double tolerance = 1e-10;
  int max_iterations = 50;
};

/// Pre-disturbance operating point of the lossless power-flow equations:
/// finds angles with P_e,i(theta) = p_mech_i - p_load_i at every bus,
/// reference bus (index 0) fixed at 0. Damped Newton iteration.
/// Throws Error(validation_error) for an unbalanced network and
/// Error(no_convergence) when the iteration cap is hit (e.g. a transfer
/// beyond the static limit).
std::vector<double> solve_equilibrium(const Network& net,
                                      const EquilibriumOptions& opt = {});

/// Electrical power P_e,i = sum_j V_i V_j B_ij sin(theta_i - theta_j).
void electrical_power(const Adjacency& adj, std::span<const double> theta,
                      std::span<double> out);

/// max_i |p_mech_i - p_load_i - P_e,i(theta)|; the post-solve check.
double max_power_residual(const Network& net, std::span<const double> theta);

}  // namespace emwave
