#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "emwave/network.hpp"

namespace emwave {

struct Disturbance {
  std::string bus;
  double delta_p = 0.0;  ///< per-unit step on p_mech at t_event (trip < 0)
  double t_event = 0.0;  ///< seconds from simulation start
};

struct SimConfig {
  double dt = 1e-3;   ///< fixed RK4 step, seconds; must be in (0, 0.01]
  double t_end = 10.0;
};

/// Dense simulation output. Series are step-major: value(step, bus) at
/// index step * n_buses + bus. freq_dev is the angle-rate state divided by
/// 2*pi, never a numerical re-differentiation of the angles.
struct TrajectorySet {
  std::vector<double> times;
  std::size_t n_buses = 0;
  std::vector<double> angles;    ///< rad
  std::vector<double> freq_dev;  ///< Hz

  std::size_t n_steps() const { return times.size(); }
  double angle(std::size_t step, std::size_t bus) const {
    return angles[step * n_buses + bus];
  }
  double freq(std::size_t step, std::size_t bus) const {
    return freq_dev[step * n_buses + bus];
  }
  std::span<const double> freq_row(std::size_t step) const {
    return {freq_dev.data() + step * n_buses, n_buses};
  }
  std::span<const double> angle_row(std::size_t step) const {
    return {angles.data() + step * n_buses, n_buses};
  }
};

/// Classical swing dynamics after a step disturbance:
///   (2 H_i / w_s) dd(theta_i) = p_mech_i - p_load_i - P_e,i
///                               - D_i * d(theta_i) / w_s
///   P_e,i = sum_j V_i V_j B_ij sin(theta_i - theta_j),  w_s = 2*pi*f0
/// integrated with fixed-step RK4 from the solve_equilibrium operating
/// point at zero frequency deviation. Deterministic; identical inputs give
/// bit-identical output regardless of thread count.
/// Throws Error(numerical_blowup) when any |freq_dev| exceeds 10 Hz.
TrajectorySet simulate(const Network& net, const Disturbance& dist,
                       const SimConfig& cfg);

/// Per-unit system energy at one state. Kinetic sum (H_i/w_s) rate_i^2 plus
/// potential -sum_branches V_i V_j B_ij cos(theta_i - theta_j)
/// + sum (p_load_i - p_mech_i) theta_i, using post-disturbance injections
/// when `post_event` carries the active step. Conserved for D = 0 after the
/// event; non-increasing for D > 0.
double total_energy(const Network& net, std::span<const double> angles,
                    std::span<const double> rates_rad,
                    const Disturbance* post_event = nullptr);

/// Inertia-weighted mean frequency deviation, Hz.
double coi_frequency(const Network& net, std::span<const double> freq_dev);

/// CSV export: header `time,<bus_id_1>,...`, one row per step, frequency
/// deviations in Hz, shortest round-trip decimals.
void save_trajectory_csv(const TrajectorySet& traj, const Network& net,
                         const std::string& path);

namespace detail {

/// Shared per-bus kernels so the OpenMP driver and the serial reference
/// produce bit-identical arithmetic.
struct SwingSystem {
  Adjacency adj;
  std::vector<double> accel_coef;  ///< w_s / (2 H_i)
  std::vector<double> damp_coef;   ///< D_i / (2 H_i)
  std::vector<double> p_pre;       ///< p_mech - p_load
  std::vector<double> p_post;      ///< p_pre with the disturbance step applied
  double t_event = 0.0;

  static SwingSystem build(const Network& net, const Disturbance& dist);

  const std::vector<double>& injections_at(double t) const {
    return t >= t_event ? p_post : p_pre;
  }

  double bus_accel(std::size_t i, const double* theta, const double* omega,
                   const std::vector<double>& p) const {
    double pe = 0.0;
    for (std::size_t k = adj.row_ptr[i]; k < adj.row_ptr[i + 1]; ++k) {
      pe += adj.weight[k] * std::sin(theta[i] - theta[adj.nbr[k]]);
    }
    return accel_coef[i] * (p[i] - pe) - damp_coef[i] * omega[i];
  }
};

void check_sim_inputs(const Network& net, const Disturbance& dist,
                      const SimConfig& cfg);

}  // namespace detail

}  // namespace emwave
