#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emwave/network.hpp"
#include "emwave/simulation.hpp"

namespace emwave {

struct SensorConfig {
  double sample_rate = 10.0;    ///< Hz; must not exceed the simulation rate
  double noise_sigma = 2e-4;    ///< Hz, additive Gaussian measurement noise
  std::uint64_t seed = 0;
  std::vector<std::string> sensor_buses;  ///< empty means every bus
};

/// Sensor-grade frequency stream at one geo-located bus.
struct FrequencyTrace {
  std::string bus;
  double x = 0.0;
  double y = 0.0;
  std::vector<double> times;   ///< uniform, spacing 1/sample_rate
  std::vector<double> values;  ///< measured frequency deviation, Hz
};

/// Nearest-sample decimation of the dense trajectory plus i.i.d. Gaussian
/// noise. Each bus draws from its own stream derived as
/// ("sensor/" + bus_id, seed), so a trace is byte-identical no matter which
/// other buses are sampled. Deterministic given the seed.
std::vector<FrequencyTrace> sample_measurements(const TrajectorySet& traj,
                                                const Network& net,
                                                const SensorConfig& cfg);

/// Trace CSV: header `time,<bus_id>`, then one `t,v` row per sample.
void save_trace_csv(const FrequencyTrace& trace, const std::string& path);
/// Positions are not part of the trace format; the caller resolves them
/// (see save_sensor_index).
FrequencyTrace load_trace_csv(const std::string& path);

/// Sidecar `sensors.csv` (header `bus,x,y`) mapping trace columns to
/// geographic positions for the analysis stage.
void save_sensor_index(const std::vector<FrequencyTrace>& traces,
                       const std::string& path);
struct SensorPos {
  std::string bus;
  double x, y;
};
std::vector<SensorPos> load_sensor_index(const std::string& path);

std::string trace_filename(std::size_t index, const std::string& bus_id);

}  // namespace emwave
