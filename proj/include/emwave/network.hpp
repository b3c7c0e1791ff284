#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace emwave {

/// Inertia floor in seconds. PV displacement never drives a bus below this,
/// and validation rejects networks that start below it.
constexpr double kHFloor = 0.01;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Bus {
  std::string id;
  double x = 0.0;  ///< position, distance units (miles by convention)
  double y = 0.0;
  double inertia_h = 1.0;   ///< per-unit inertia constant H, seconds
  double damping_d = 0.0;   ///< per-unit damping on frequency deviation
  double voltage = 1.0;     ///< per-unit voltage magnitude
  double p_mech = 0.0;      ///< per-unit mechanical/source injection
  double p_load = 0.0;      ///< per-unit load
  double pv_fraction = 0.0; ///< fraction of generation that is inverter-based
};

struct Branch {
  std::string from;
  std::string to;
  double susceptance_b = 0.0;  ///< per-unit susceptance, lossless line
};

/// Immutable-by-convention network model; operations return new values.
struct Network {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  double f0 = 60.0;  ///< nominal frequency, Hz

  double omega_s() const { return kTwoPi * f0; }

  /// Index of a bus id; throws Error(validation_error) when absent.
  std::size_t index_of(const std::string& id) const;
  bool has_bus(const std::string& id) const;

  double total_p_mech() const;
  double total_p_load() const;

  /// Bounding box {x_min, x_max, y_min, y_max}.
  std::array<double, 4> extent() const;

  /// Structural checks: non-empty, unique ids, branch endpoints exist,
  /// no self-loops or duplicate pairs, positive susceptance/voltage,
  /// inertia above the floor, pv_fraction in [0,1], connected graph.
  /// Throws Error(validation_error) naming the offending element.
  void validate(double h_floor = kHFloor) const;

  /// |sum p_mech - sum p_load| within tolerance (relative to scale).
  bool balanced(double tol = 1e-9) const;
};

bool identical(const Network& a, const Network& b);

/// Compressed adjacency used by the dynamics and power-flow kernels.
/// weight[k] = V_i * V_j * B_ij for neighbor j of bus i.
struct Adjacency {
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> nbr;
  std::vector<double> weight;

  static Adjacency build(const Network& net);
};

std::unordered_map<std::string, std::size_t> bus_index_map(const Network& net);

}  // namespace emwave
