#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "emwave/detector.hpp"
#include "emwave/field.hpp"
#include "emwave/measurement.hpp"
#include "emwave/scenario.hpp"
#include "emwave/simulation.hpp"

namespace emtool {

struct Rect {
  double x_min, x_max, y_min, y_max;
};

/// Effective run configuration: the config file merged with CLI overrides.
/// The manifest hash covers every semantically meaningful field (everything
/// except the output directory).
struct ToolConfig {
  std::string network_path;
  std::string traces_dir;  ///< input for analyze/replay
  std::string tdoa_path;   ///< input for locate

  emwave::Disturbance disturbance;
  emwave::SimConfig sim;
  bool write_trajectory = true;

  emwave::SensorConfig sensors;
  emwave::DetectorConfig detector;

  /// Grid extent; absent means auto (bounding box of the data positions).
  std::optional<std::array<double, 4>> grid_bounds;
  int grid_nx = 100;
  int grid_ny = 100;
  double idw_power = 2.0;
  std::optional<double> max_radius;
  double min_grad = 1e-6;

  std::optional<double> event_time;  ///< analyze/replay; default t_event
  std::optional<std::pair<double, double>> event_pos;
  std::vector<double> frames;

  std::vector<emwave::ScenarioSpec> scenarios;
  std::map<std::string, Rect> regions;

  std::string out = "out";
  std::uint64_t seed = 0;

  /// Canonical JSON of the semantic fields (sorted keys, no `out`).
  nlohmann::json canonical() const;
  std::string config_hash() const;
};

ToolConfig config_from_json(const nlohmann::json& doc, const std::string& origin);
ToolConfig load_config(const std::string& path);

int cmd_simulate(const ToolConfig& cfg);
int cmd_analyze(const ToolConfig& cfg);
int cmd_scenario(const ToolConfig& cfg);
int cmd_locate(const ToolConfig& cfg);
int cmd_replay(const ToolConfig& cfg);

}  // namespace emtool
