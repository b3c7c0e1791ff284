#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emwave/builders.hpp"
#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"
#include "emwave/network_io.hpp"
#include "pipeline.hpp"

namespace {

using emtool::ToolConfig;

// Flag overrides shared by the pipeline subcommands; flags win over the
// config file.
struct Overrides {
  std::optional<std::string> network, traces, tdoa, out, mode;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> bus;
  std::optional<double> delta_p, t_event, dt, t_end;
  std::optional<double> sample_rate, noise_sigma;
  std::optional<double> threshold, fraction, baseline_window;
  std::optional<double> gx_min, gx_max, gy_min, gy_max;
  std::optional<int> nx, ny;
  std::optional<double> event_time, event_x, event_y;
  std::optional<double> idw_power, max_radius, min_grad;
  std::vector<double> frames;
  bool no_trajectory = false;
};

void add_common_options(CLI::App* cmd, std::string& config_path, Overrides& ov) {
  cmd->add_option("--config", config_path, "JSON config file");
  cmd->add_option("--out", ov.out, "output directory");
  cmd->add_option("--seed", ov.seed, "root RNG seed (splitmix64 streams)");
  cmd->add_option("--network", ov.network, "network JSON file");
  cmd->add_option("--traces", ov.traces, "traces directory (from simulate)");
  cmd->add_option("--tdoa", ov.tdoa, "tdoa.csv path (from analyze)");
  cmd->add_option("--bus", ov.bus, "disturbance bus id");
  cmd->add_option("--delta-p", ov.delta_p, "disturbance step, per unit");
  cmd->add_option("--t-event", ov.t_event, "disturbance time, s");
  cmd->add_option("--dt", ov.dt, "integrator step, s");
  cmd->add_option("--t-end", ov.t_end, "simulation end, s");
  cmd->add_flag("--no-trajectory", ov.no_trajectory, "skip trajectory.csv");
  cmd->add_option("--sample-rate", ov.sample_rate, "sensor rate, Hz");
  cmd->add_option("--noise-sigma", ov.noise_sigma, "sensor noise sigma, Hz");
  cmd->add_option("--mode", ov.mode, "detector mode: absolute|relative");
  cmd->add_option("--threshold", ov.threshold, "detector threshold, Hz");
  cmd->add_option("--fraction", ov.fraction, "relative-mode fraction");
  cmd->add_option("--baseline-window", ov.baseline_window, "baseline window, s");
  cmd->add_option("--grid-x-min", ov.gx_min, "grid extent");
  cmd->add_option("--grid-x-max", ov.gx_max, "grid extent");
  cmd->add_option("--grid-y-min", ov.gy_min, "grid extent");
  cmd->add_option("--grid-y-max", ov.gy_max, "grid extent");
  cmd->add_option("--nx", ov.nx, "grid columns");
  cmd->add_option("--ny", ov.ny, "grid rows");
  cmd->add_option("--event-time", ov.event_time, "event time for analysis, s");
  cmd->add_option("--event-x", ov.event_x, "known event x");
  cmd->add_option("--event-y", ov.event_y, "known event y");
  cmd->add_option("--idw-power", ov.idw_power, "IDW exponent");
  cmd->add_option("--max-radius", ov.max_radius, "IDW mask radius");
  cmd->add_option("--min-grad", ov.min_grad, "speed-field gradient floor");
  cmd->add_option("--frames", ov.frames, "replay frame times, s");
}

ToolConfig make_config(const std::string& config_path, const Overrides& ov) {
  ToolConfig cfg = config_path.empty() ? ToolConfig{}
                                       : emtool::load_config(config_path);
  if (ov.network) cfg.network_path = *ov.network;
  if (ov.traces) cfg.traces_dir = *ov.traces;
  if (ov.tdoa) cfg.tdoa_path = *ov.tdoa;
  if (ov.out) cfg.out = *ov.out;
  if (ov.seed) {
    cfg.seed = *ov.seed;
    cfg.sensors.seed = *ov.seed;
  }
  if (ov.bus) cfg.disturbance.bus = *ov.bus;
  if (ov.delta_p) cfg.disturbance.delta_p = *ov.delta_p;
  if (ov.t_event) cfg.disturbance.t_event = *ov.t_event;
  if (ov.dt) cfg.sim.dt = *ov.dt;
  if (ov.t_end) cfg.sim.t_end = *ov.t_end;
  if (ov.no_trajectory) cfg.write_trajectory = false;
  if (ov.sample_rate) cfg.sensors.sample_rate = *ov.sample_rate;
  if (ov.noise_sigma) cfg.sensors.noise_sigma = *ov.noise_sigma;
  if (ov.mode) {
    if (*ov.mode == "absolute") {
      cfg.detector.mode = emwave::ThresholdMode::absolute;
    } else if (*ov.mode == "relative") {
      cfg.detector.mode = emwave::ThresholdMode::relative;
    } else {
      emwave::fail(emwave::Errc::parse_error,
                   "--mode must be absolute or relative");
    }
  }
  if (ov.threshold) cfg.detector.threshold = *ov.threshold;
  if (ov.fraction) cfg.detector.fraction = *ov.fraction;
  if (ov.baseline_window) cfg.detector.baseline_window = *ov.baseline_window;
  if (ov.gx_min || ov.gx_max || ov.gy_min || ov.gy_max) {
    std::array<double, 4> b =
        cfg.grid_bounds.value_or(std::array<double, 4>{0, 1, 0, 1});
    if (ov.gx_min) b[0] = *ov.gx_min;
    if (ov.gx_max) b[1] = *ov.gx_max;
    if (ov.gy_min) b[2] = *ov.gy_min;
    if (ov.gy_max) b[3] = *ov.gy_max;
    cfg.grid_bounds = b;
  }
  if (ov.nx) cfg.grid_nx = *ov.nx;
  if (ov.ny) cfg.grid_ny = *ov.ny;
  if (ov.event_time) cfg.event_time = *ov.event_time;
  if (ov.event_x && ov.event_y) cfg.event_pos = {*ov.event_x, *ov.event_y};
  if (ov.idw_power) cfg.idw_power = *ov.idw_power;
  if (ov.max_radius) cfg.max_radius = *ov.max_radius;
  if (ov.min_grad) cfg.min_grad = *ov.min_grad;
  if (!ov.frames.empty()) cfg.frames = ov.frames;
  return cfg;
}

struct BuildChainArgs {
  int n = 20;
  double spacing = 100, h = 4, d = 1, b = 10, v = 1, flow = 0, f0 = 60;
  std::string out = "network.json";
};

struct BuildLatticeArgs {
  int rows = 10, cols = 10;
  double spacing = 100, h = 4, d = 1, b = 10, v = 1, gen = 1, f0 = 60;
  std::vector<std::string> regions;  // x_min,x_max,y_min,y_max,mult
  std::string out = "network.json";
};

emwave::RegionScale parse_region(const std::string& text) {
  auto cells = emwave::split_csv_line(text);
  if (cells.size() != 5) {
    emwave::fail(emwave::Errc::parse_error,
                 "--region wants x_min,x_max,y_min,y_max,h_multiplier");
  }
  return {emwave::parse_double(cells[0], "--region"),
          emwave::parse_double(cells[1], "--region"),
          emwave::parse_double(cells[2], "--region"),
          emwave::parse_double(cells[3], "--region"),
          emwave::parse_double(cells[4], "--region")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"electromechanical wave propagation toolkit"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "generate a synthetic network file");
  build->require_subcommand(1);
  BuildChainArgs chain_args;
  auto* chain = build->add_subcommand("chain", "1-D chain of buses");
  chain->add_option("--n", chain_args.n, "bus count");
  chain->add_option("--spacing", chain_args.spacing, "bus spacing, miles");
  chain->add_option("--inertia-h", chain_args.h, "inertia H, s");
  chain->add_option("--damping-d", chain_args.d, "damping D");
  chain->add_option("--susceptance-b", chain_args.b, "branch susceptance, pu");
  chain->add_option("--voltage", chain_args.v, "bus voltage, pu");
  chain->add_option("--flow", chain_args.flow, "end-to-end transfer, pu");
  chain->add_option("--f0", chain_args.f0, "nominal frequency, Hz");
  chain->add_option("--out", chain_args.out, "output network file");

  BuildLatticeArgs lat_args;
  auto* lattice = build->add_subcommand("lattice", "2-D grid of buses");
  lattice->add_option("--rows", lat_args.rows, "row count");
  lattice->add_option("--cols", lat_args.cols, "column count");
  lattice->add_option("--spacing", lat_args.spacing, "bus spacing, miles");
  lattice->add_option("--inertia-h", lat_args.h, "inertia H, s");
  lattice->add_option("--damping-d", lat_args.d, "damping D");
  lattice->add_option("--susceptance-b", lat_args.b, "branch susceptance, pu");
  lattice->add_option("--voltage", lat_args.v, "bus voltage, pu");
  lattice->add_option("--gen", lat_args.gen, "balanced per-bus generation, pu");
  lattice->add_option("--f0", lat_args.f0, "nominal frequency, Hz");
  lattice->add_option("--region", lat_args.regions,
                      "inertia region x_min,x_max,y_min,y_max,h_multiplier");
  lattice->add_option("--out", lat_args.out, "output network file");

  // pipeline subcommands
  struct Sub {
    CLI::App* cmd;
    std::string config;
    Overrides ov;
    int (*run)(const ToolConfig&);
  };
  std::vector<Sub> subs;
  subs.reserve(8);  // CLI11 keeps references into the elements
  auto add_sub = [&](const char* name, const char* help,
                     int (*run)(const ToolConfig&)) {
    subs.push_back({app.add_subcommand(name, help), {}, {}, run});
    add_common_options(subs.back().cmd, subs.back().config, subs.back().ov);
  };
  add_sub("simulate", "integrate the swing dynamics and write sensor traces",
          emtool::cmd_simulate);
  add_sub("analyze", "detect TDOAs and build arrival-time and speed maps",
          emtool::cmd_analyze);
  add_sub("scenario", "sweep PV penetration scenarios", emtool::cmd_scenario);
  add_sub("locate", "grid-search the event location from tdoa.csv",
          emtool::cmd_locate);
  add_sub("replay", "export interpolated frequency-field frames",
          emtool::cmd_replay);

  CLI11_PARSE(app, argc, argv);

  try {
    if (chain->parsed()) {
      emwave::Network net = emwave::build_chain(
          {chain_args.n, chain_args.spacing, chain_args.h, chain_args.d,
           chain_args.b, chain_args.v, chain_args.flow, chain_args.f0});
      emwave::save_network(net, chain_args.out);
      return 0;
    }
    if (lattice->parsed()) {
      emwave::LatticeParams p{lat_args.rows,    lat_args.cols, lat_args.spacing,
                              lat_args.h,       lat_args.d,    lat_args.b,
                              lat_args.v,       lat_args.gen,  lat_args.f0,
                              {}};
      for (const std::string& r : lat_args.regions) {
        p.inertia_regions.push_back(parse_region(r));
      }
      emwave::save_network(emwave::build_lattice(p), lat_args.out);
      return 0;
    }
    for (Sub& sub : subs) {
      if (sub.cmd->parsed()) {
        return sub.run(make_config(sub.config, sub.ov));
      }
    }
  } catch (const emwave::Error& e) {
    std::cerr << "error[" << emwave::errc_name(e.code()) << "]: " << e.what()
              << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
