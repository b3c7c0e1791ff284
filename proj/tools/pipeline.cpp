#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"
#include "emwave/locate.hpp"
#include "emwave/network_io.hpp"
#include "emwave/replay.hpp"
#include "emwave/rng.hpp"
#include "emwave/speed.hpp"
#include "emwave/stats.hpp"

namespace emtool {

namespace fs = std::filesystem;
using emwave::Errc;
using emwave::Error;
using emwave::fail;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

double num_or(const json& obj, const char* key, double fallback,
              const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return fallback;
  if (!it->is_number()) {
    fail(Errc::parse_error, where + ": '" + key + "' must be a number");
  }
  return it->get<double>();
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  auto it = doc.find(key);
  return it == doc.end() ? empty : *it;
}

}  // namespace

namespace {

ToolConfig config_from_json_inner(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(Errc::parse_error, origin + ": config must be an object");
  ToolConfig cfg;

  cfg.network_path = doc.value("network", std::string{});
  cfg.traces_dir = doc.value("traces", std::string{});
  cfg.tdoa_path = doc.value("tdoa", std::string{});
  cfg.out = doc.value("out", std::string{"out"});
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      fail(Errc::parse_error, origin + ": 'seed' must be an integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }

  const json& dist = section(doc, "disturbance");
  cfg.disturbance.bus = dist.value("bus", std::string{});
  cfg.disturbance.delta_p = num_or(dist, "delta_p", 0.0, origin);
  cfg.disturbance.t_event = num_or(dist, "t_event", 0.0, origin);

  const json& sim = section(doc, "sim");
  cfg.sim.dt = num_or(sim, "dt", 1e-3, origin);
  cfg.sim.t_end = num_or(sim, "t_end", 10.0, origin);
  if (sim.contains("write_trajectory")) {
    cfg.write_trajectory = sim["write_trajectory"].get<bool>();
  }

  const json& sens = section(doc, "sensors");
  cfg.sensors.sample_rate = num_or(sens, "sample_rate", 10.0, origin);
  cfg.sensors.noise_sigma = num_or(sens, "noise_sigma", 2e-4, origin);
  if (sens.contains("buses") && sens["buses"].is_array()) {
    for (const json& b : sens["buses"]) {
      cfg.sensors.sensor_buses.push_back(b.get<std::string>());
    }
  }
  cfg.sensors.seed = cfg.seed;

  const json& det = section(doc, "detector");
  std::string mode = det.value("mode", std::string{"absolute"});
  if (mode == "absolute") {
    cfg.detector.mode = emwave::ThresholdMode::absolute;
  } else if (mode == "relative") {
    cfg.detector.mode = emwave::ThresholdMode::relative;
  } else {
    fail(Errc::parse_error, origin + ": detector mode must be absolute|relative");
  }
  cfg.detector.threshold = num_or(det, "threshold", 0.003, origin);
  cfg.detector.fraction = num_or(det, "fraction", 0.2, origin);
  cfg.detector.baseline_window = num_or(det, "baseline_window", 2.0, origin);

  if (doc.contains("grid") && !doc["grid"].is_null()) {
    const json& g = doc["grid"];
    if (g.is_string()) {
      if (g.get<std::string>() != "auto") {
        fail(Errc::parse_error, origin + ": grid must be \"auto\" or an object");
      }
    } else {
      cfg.grid_nx = static_cast<int>(num_or(g, "nx", 100, origin));
      cfg.grid_ny = static_cast<int>(num_or(g, "ny", 100, origin));
      bool has_bounds = g.contains("x_min") || g.contains("x_max") ||
                        g.contains("y_min") || g.contains("y_max");
      if (has_bounds) {
        std::array<double, 4> b{num_or(g, "x_min", 0.0, origin),
                                num_or(g, "x_max", 1.0, origin),
                                num_or(g, "y_min", 0.0, origin),
                                num_or(g, "y_max", 1.0, origin)};
        emwave::GridSpec{b[0], b[1], b[2], b[3], cfg.grid_nx, cfg.grid_ny}.validate();
        cfg.grid_bounds = b;
      }
    }
  }

  const json& an = section(doc, "analysis");
  cfg.idw_power = num_or(an, "idw_power", 2.0, origin);
  if (an.contains("max_radius") && !an["max_radius"].is_null()) {
    cfg.max_radius = an["max_radius"].get<double>();
  }
  cfg.min_grad = num_or(an, "min_grad", 1e-6, origin);

  const json& ev = section(doc, "event");
  if (ev.contains("time")) cfg.event_time = ev["time"].get<double>();
  if (ev.contains("x") && ev.contains("y")) {
    cfg.event_pos = {ev["x"].get<double>(), ev["y"].get<double>()};
  }

  if (doc.contains("frames")) {
    for (const json& f : doc["frames"]) cfg.frames.push_back(f.get<double>());
  }

  if (doc.contains("scenarios")) {
    for (const json& sc : doc["scenarios"]) {
      emwave::ScenarioSpec spec;
      spec.name = sc.value("name", "scenario" + std::to_string(cfg.scenarios.size()));
      spec.penetration = num_or(sc, "penetration", 0.0, origin);
      spec.seed = sc.value("seed", cfg.seed);
      if (sc.contains("region_weights") && !sc["region_weights"].is_null()) {
        const json& w = sc["region_weights"];
        if (w.is_string()) {
          if (w.get<std::string>() != "uniform") {
            fail(Errc::parse_error,
                 origin + ": region_weights must be \"uniform\" or a map");
          }
        } else if (w.is_object()) {
          for (auto it = w.begin(); it != w.end(); ++it) {
            spec.region_weights[it.key()] = it.value().get<double>();
          }
        } else {
          fail(Errc::parse_error, origin + ": bad region_weights");
        }
      }
      cfg.scenarios.push_back(std::move(spec));
    }
  }

  if (doc.contains("regions")) {
    for (auto it = doc["regions"].begin(); it != doc["regions"].end(); ++it) {
      const json& r = it.value();
      cfg.regions[it.key()] = {r.at("x_min").get<double>(), r.at("x_max").get<double>(),
                               r.at("y_min").get<double>(), r.at("y_max").get<double>()};
    }
  }

  return cfg;
}

}  // namespace

ToolConfig config_from_json(const json& doc, const std::string& origin) {
  try {
    return config_from_json_inner(doc, origin);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, origin + ": " + std::string(e.what()));
  }
}

ToolConfig load_config(const std::string& path) {
  if (!fs::exists(path)) fail(Errc::io_error, "config file not found: " + path);
  json doc;
  try {
    doc = json::parse(emwave::read_text_file(path));
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path + ": " + std::string(e.what()));
  }
  return config_from_json(doc, path);
}

json ToolConfig::canonical() const {
  json doc;
  doc["network"] = network_path;
  doc["traces"] = traces_dir;
  doc["tdoa"] = tdoa_path;
  doc["seed"] = seed;
  doc["disturbance"] = {{"bus", disturbance.bus},
                        {"delta_p", disturbance.delta_p},
                        {"t_event", disturbance.t_event}};
  doc["sim"] = {{"dt", sim.dt},
                {"t_end", sim.t_end},
                {"write_trajectory", write_trajectory}};
  json buses = json::array();
  for (const std::string& b : sensors.sensor_buses) buses.push_back(b);
  doc["sensors"] = {{"sample_rate", sensors.sample_rate},
                    {"noise_sigma", sensors.noise_sigma},
                    {"buses", buses}};
  doc["detector"] = {
      {"mode", detector.mode == emwave::ThresholdMode::absolute ? "absolute" : "relative"},
      {"threshold", detector.threshold},
      {"fraction", detector.fraction},
      {"baseline_window", detector.baseline_window}};
  if (grid_bounds) {
    doc["grid"] = {{"x_min", (*grid_bounds)[0]}, {"x_max", (*grid_bounds)[1]},
                   {"y_min", (*grid_bounds)[2]}, {"y_max", (*grid_bounds)[3]},
                   {"nx", grid_nx},              {"ny", grid_ny}};
  } else {
    doc["grid"] = {{"extent", "auto"}, {"nx", grid_nx}, {"ny", grid_ny}};
  }
  doc["analysis"] = {{"idw_power", idw_power},
                     {"max_radius", max_radius ? json(*max_radius) : json()},
                     {"min_grad", min_grad}};
  doc["event"] = json::object();
  if (event_time) doc["event"]["time"] = *event_time;
  if (event_pos) {
    doc["event"]["x"] = event_pos->first;
    doc["event"]["y"] = event_pos->second;
  }
  json frames_j = json::array();
  for (double f : frames) frames_j.push_back(f);
  doc["frames"] = frames_j;
  json scen = json::array();
  for (const emwave::ScenarioSpec& s : scenarios) {
    json w;
    if (s.region_weights.empty()) {
      w = "uniform";
    } else {
      w = json::object();
      for (const auto& [id, v] : s.region_weights) w[id] = v;
    }
    scen.push_back({{"name", s.name},
                    {"penetration", s.penetration},
                    {"seed", s.seed},
                    {"region_weights", w}});
  }
  doc["scenarios"] = scen;
  json regs = json::object();
  for (const auto& [name, r] : regions) {
    regs[name] = {{"x_min", r.x_min}, {"x_max", r.x_max},
                  {"y_min", r.y_min}, {"y_max", r.y_max}};
  }
  doc["regions"] = regs;
  return doc;
}

std::string ToolConfig::config_hash() const {
  std::uint64_t h = emwave::fnv1a64(canonical().dump());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(Errc::io_error, "cannot create directory: " + dir);
}

void write_manifest(const ToolConfig& cfg, const std::string& subcommand,
                    std::vector<std::string> files,
                    const json& extra = json::object()) {
  std::sort(files.begin(), files.end());
  json doc;
  doc["subcommand"] = subcommand;
  doc["config_hash"] = cfg.config_hash();
  doc["seed"] = cfg.seed;
  doc["files"] = files;
  for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
  emwave::write_text_file((fs::path(cfg.out) / "manifest.json").string(),
                          doc.dump(2) + "\n");
}

emwave::GridSpec effective_grid(const ToolConfig& cfg,
                                const std::vector<std::pair<double, double>>& positions) {
  if (cfg.grid_bounds) {
    return emwave::GridSpec{(*cfg.grid_bounds)[0], (*cfg.grid_bounds)[1],
                            (*cfg.grid_bounds)[2], (*cfg.grid_bounds)[3],
                            cfg.grid_nx, cfg.grid_ny};
  }
  if (positions.empty()) fail(Errc::empty_samples, "no positions for auto grid");
  double x_min = positions[0].first, x_max = x_min;
  double y_min = positions[0].second, y_max = y_min;
  for (auto [x, y] : positions) {
    x_min = std::min(x_min, x);
    x_max = std::max(x_max, x);
    y_min = std::min(y_min, y);
    y_max = std::max(y_max, y);
  }
  if (!(x_max > x_min)) x_max = x_min + 1.0;
  if (!(y_max > y_min)) y_max = y_min + 1.0;
  return emwave::GridSpec{x_min, x_max, y_min, y_max, cfg.grid_nx, cfg.grid_ny};
}

std::vector<emwave::FrequencyTrace> load_traces_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) {
    fail(Errc::io_error, "traces directory not found: " + dir);
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && name.size() > 4 &&
        name.substr(name.size() - 4) == ".csv") {
      names.push_back(entry.path().string());
    }
  }
  std::sort(names.begin(), names.end());

  std::vector<emwave::FrequencyTrace> traces;
  traces.reserve(names.size());
  for (const std::string& p : names) traces.push_back(emwave::load_trace_csv(p));

  std::string index_path = (fs::path(dir) / "sensors.csv").string();
  if (!fs::exists(index_path)) {
    fail(Errc::io_error, "missing sensors.csv in traces directory: " + dir);
  }
  auto index = emwave::load_sensor_index(index_path);
  for (emwave::FrequencyTrace& tr : traces) {
    auto it = std::find_if(index.begin(), index.end(),
                           [&](const emwave::SensorPos& s) { return s.bus == tr.bus; });
    if (it == index.end()) {
      fail(Errc::validation_error,
           "trace bus '" + tr.bus + "' missing from sensors.csv");
    }
    tr.x = it->x;
    tr.y = it->y;
  }
  return traces;
}

struct AnalysisOutput {
  emwave::TdoaSamples samples;
  emwave::GridSpec grid;
  emwave::SpeedField speed;
  std::vector<std::string> files;
};

json region_stats_json(const ToolConfig& cfg, const emwave::SpeedField& speed) {
  json out = json::object();
  if (cfg.regions.empty()) return out;
  std::vector<emwave::NamedRegion> regions;
  for (const auto& [name, r] : cfg.regions) {
    regions.push_back({name, emwave::region_mask_from_rect(speed.grid, r.x_min,
                                                           r.x_max, r.y_min,
                                                           r.y_max)});
  }
  auto stats = emwave::regional_speed_stats(speed, regions);
  for (const auto& [name, st] : stats) {
    out[name] = {{"n_cells", st.n_cells}, {"mean", st.mean},
                 {"median", st.median},   {"p5", st.p5},
                 {"p95", st.p95}};
  }
  return out;
}

// Detection -> interpolation -> gradient chain shared by cmd_analyze and the
// per-scenario pipeline; writes tdoa.csv, tdoa_field.csv, speed_field.csv and
// stats.json into `dir`.
AnalysisOutput run_analysis(const ToolConfig& cfg,
                            const std::vector<emwave::FrequencyTrace>& traces,
                            double event_time,
                            std::optional<std::pair<double, double>> event_pos,
                            const std::string& dir) {
  ensure_dir(dir);
  AnalysisOutput out;
  out.samples = emwave::build_tdoa_samples(traces, event_time, event_pos,
                                           cfg.detector);

  std::vector<std::pair<double, double>> positions;
  for (const emwave::TdoaEntry& e : out.samples.entries) {
    positions.emplace_back(e.x, e.y);
  }
  out.grid = effective_grid(cfg, positions);

  emwave::ScalarField tdoa_field =
      emwave::interpolate_field(out.samples, out.grid, cfg.idw_power, cfg.max_radius);
  out.speed = emwave::speed_field(tdoa_field, cfg.min_grad);

  emwave::save_tdoa_csv(out.samples, (fs::path(dir) / "tdoa.csv").string());
  emwave::save_field_csv(tdoa_field, (fs::path(dir) / "tdoa_field.csv").string());
  {
    emwave::ScalarField sp;
    sp.grid = out.speed.grid;
    sp.values = out.speed.speed;
    sp.mask = out.speed.mask;
    emwave::save_field_csv(sp, (fs::path(dir) / "speed_field.csv").string());
  }

  json stats;
  json excl = json::array();
  for (const emwave::Exclusion& e : out.samples.exclusions) {
    excl.push_back({{"bus", e.bus}, {"reason", e.reason}});
  }
  stats["arrivals"] = {{"detected", out.samples.entries.size()},
                       {"excluded", excl}};
  stats["grid"] = {{"x_min", out.grid.x_min}, {"x_max", out.grid.x_max},
                   {"y_min", out.grid.y_min}, {"y_max", out.grid.y_max},
                   {"nx", out.grid.nx},       {"ny", out.grid.ny}};
  emwave::RegionStats all = emwave::speed_stats(out.speed);
  emwave::RegionStats interior = emwave::interior_speed_stats(out.speed);
  stats["speed"] = {{"n_valid", all.n_cells},
                    {"mean", all.mean},
                    {"median", all.median},
                    {"p5", all.p5},
                    {"p95", all.p95},
                    {"interior_n", interior.n_cells},
                    {"interior_median", interior.median}};
  stats["regions"] = region_stats_json(cfg, out.speed);
  emwave::write_text_file((fs::path(dir) / "stats.json").string(),
                          stats.dump(2) + "\n");

  out.files = {"tdoa.csv", "tdoa_field.csv", "speed_field.csv", "stats.json"};
  return out;
}

int sweep_thread_cap(int n_scenarios) {
  int cap = 1;
#ifdef _OPENMP
  cap = omp_get_max_threads();
#endif
  if (const char* env = std::getenv("EMWAVE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) cap = static_cast<int>(v);
  }
  return std::max(1, std::min(cap, n_scenarios));
}

}  // namespace

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_simulate(const ToolConfig& cfg) {
  if (cfg.network_path.empty()) fail(Errc::io_error, "config needs 'network'");
  emwave::Network net = emwave::load_network(cfg.network_path);
  emwave::TrajectorySet traj = emwave::simulate(net, cfg.disturbance, cfg.sim);
  auto traces = emwave::sample_measurements(traj, net, cfg.sensors);

  ensure_dir(cfg.out);
  std::string traces_dir = (fs::path(cfg.out) / "traces").string();
  ensure_dir(traces_dir);

  std::vector<std::string> files;
  for (std::size_t k = 0; k < traces.size(); ++k) {
    std::string name = emwave::trace_filename(k, traces[k].bus);
    emwave::save_trace_csv(traces[k], (fs::path(traces_dir) / name).string());
    files.push_back("traces/" + name);
  }
  emwave::save_sensor_index(traces, (fs::path(traces_dir) / "sensors.csv").string());
  files.push_back("traces/sensors.csv");

  if (cfg.write_trajectory) {
    emwave::save_trajectory_csv(traj, net,
                                (fs::path(cfg.out) / "trajectory.csv").string());
    files.push_back("trajectory.csv");
  }
  write_manifest(cfg, "simulate", std::move(files));
  return 0;
}

int cmd_analyze(const ToolConfig& cfg) {
  std::string dir = cfg.traces_dir;
  if (dir.empty()) fail(Errc::io_error, "config needs 'traces' (directory)");
  auto traces = load_traces_dir(dir);
  if (traces.empty()) fail(Errc::too_few_arrivals, "no trace files in " + dir);

  double event_time = cfg.event_time ? *cfg.event_time : cfg.disturbance.t_event;
  ensure_dir(cfg.out);
  AnalysisOutput out = run_analysis(cfg, traces, event_time, cfg.event_pos, cfg.out);
  write_manifest(cfg, "analyze", out.files);
  return 0;
}

int cmd_scenario(const ToolConfig& cfg) {
  if (cfg.network_path.empty()) fail(Errc::io_error, "config needs 'network'");
  if (cfg.scenarios.empty()) fail(Errc::invalid_parameter, "config has no scenarios");
  emwave::Network base = emwave::load_network(cfg.network_path);
  ensure_dir(cfg.out);

  struct Row {
    std::string name;
    double penetration = 0.0;
    bool ok = false;
    std::string error;
    int exit_code = 0;
    double interior_median = 0.0;
    std::optional<double> pearson_r;
    std::string pearson_note;
    json regions;
  };
  const int n = static_cast<int>(cfg.scenarios.size());
  std::vector<Row> rows(n);

  // Independent pure pipelines; EMWAVE_THREADS caps the sweep parallelism.
  const int threads = sweep_thread_cap(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int k = 0; k < n; ++k) {
    const emwave::ScenarioSpec& spec = cfg.scenarios[k];
    Row& row = rows[k];
    row.name = spec.name;
    row.penetration = spec.penetration;
    try {
      emwave::Network net = emwave::apply_pv_scenario(base, spec);
      emwave::TrajectorySet traj = emwave::simulate(net, cfg.disturbance, cfg.sim);
      auto traces = emwave::sample_measurements(traj, net, cfg.sensors);
      std::string dir = (fs::path(cfg.out) / ("scenario_" + spec.name)).string();
      AnalysisOutput out = run_analysis(cfg, traces, cfg.disturbance.t_event,
                                        std::nullopt, dir);
      row.interior_median = emwave::interior_speed_stats(out.speed).median;
      row.regions = region_stats_json(cfg, out.speed);

      emwave::ScalarField pen_field =
          emwave::rasterize_penetration(net, out.grid, cfg.idw_power);
      emwave::save_field_csv(pen_field,
                             (fs::path(dir) / "penetration_field.csv").string());
      try {
        row.pearson_r = emwave::pearson_correlation(out.speed, pen_field);
      } catch (const Error& e) {
        if (e.code() == Errc::zero_variance) {
          row.pearson_note = "zero_variance";
        } else {
          throw;
        }
      }
      row.ok = true;
    } catch (const Error& e) {
      row.error = std::string(emwave::errc_name(e.code())) + ": " + e.what();
      row.exit_code = e.exit_code();
    } catch (const std::exception& e) {
      row.error = std::string("internal: ") + e.what();
      row.exit_code = 1;
    }
  }

  // Deterministic summary in scenario-list order.
  json summary;
  summary["scenarios"] = json::array();
  std::string table = "name,penetration,status,interior_median_speed,pearson_r\n";
  std::vector<std::string> files;
  int exit_code = 0;
  for (const Row& row : rows) {
    json entry;
    entry["name"] = row.name;
    entry["penetration"] = row.penetration;
    entry["status"] = row.ok ? "ok" : "error";
    if (row.ok) {
      entry["interior_median_speed"] = row.interior_median;
      entry["pearson_r"] = row.pearson_r ? json(*row.pearson_r) : json();
      if (!row.pearson_note.empty()) entry["pearson_note"] = row.pearson_note;
      if (!row.regions.empty()) entry["regions"] = row.regions;
      for (const char* f : {"tdoa.csv", "tdoa_field.csv", "speed_field.csv",
                            "stats.json", "penetration_field.csv"}) {
        files.push_back("scenario_" + row.name + "/" + f);
      }
    } else {
      entry["error"] = row.error;
      if (exit_code == 0) exit_code = row.exit_code;
    }
    summary["scenarios"].push_back(entry);
    table += row.name + "," + emwave::format_double(row.penetration) + "," +
             (row.ok ? "ok" : "error") + "," +
             (row.ok ? emwave::format_double(row.interior_median) : "") + "," +
             (row.ok && row.pearson_r ? emwave::format_double(*row.pearson_r) : "") +
             "\n";
  }
  emwave::write_text_file((fs::path(cfg.out) / "summary.json").string(),
                          summary.dump(2) + "\n");
  emwave::write_text_file((fs::path(cfg.out) / "summary.csv").string(), table);
  files.push_back("summary.json");
  files.push_back("summary.csv");
  write_manifest(cfg, "scenario", std::move(files));
  return exit_code;
}

int cmd_locate(const ToolConfig& cfg) {
  if (cfg.tdoa_path.empty()) fail(Errc::io_error, "config needs 'tdoa' (csv path)");
  emwave::TdoaSamples samples = emwave::load_tdoa_csv(cfg.tdoa_path);

  std::vector<std::pair<double, double>> positions;
  for (const emwave::TdoaEntry& e : samples.entries) positions.emplace_back(e.x, e.y);
  emwave::GridSpec grid = effective_grid(cfg, positions);

  emwave::LocationResult loc = emwave::locate_event(samples, grid);
  if (loc.collinear) {
    std::cerr << "warning: sensors are collinear; location is ambiguous "
                 "perpendicular to their axis\n";
  }
  ensure_dir(cfg.out);
  std::string line = emwave::format_double(loc.x) + "," +
                     emwave::format_double(loc.y) + "," +
                     emwave::format_double(loc.residual) + "," +
                     emwave::format_double(loc.v_hat) + "\n";
  emwave::write_text_file((fs::path(cfg.out) / "location.csv").string(), line);
  write_manifest(cfg, "locate", {"location.csv"},
                 json::object({{"collinear", loc.collinear}}));
  return 0;
}

int cmd_replay(const ToolConfig& cfg) {
  std::string dir = cfg.traces_dir;
  if (dir.empty()) fail(Errc::io_error, "config needs 'traces' (directory)");
  if (cfg.frames.empty()) fail(Errc::invalid_parameter, "config has no frame times");
  auto traces = load_traces_dir(dir);
  if (traces.empty()) fail(Errc::empty_samples, "no trace files in " + dir);

  std::vector<std::pair<double, double>> positions;
  for (const emwave::FrequencyTrace& tr : traces) positions.emplace_back(tr.x, tr.y);
  emwave::GridSpec grid = effective_grid(cfg, positions);

  auto frames = emwave::replay_frames(traces, grid, cfg.frames, cfg.idw_power);
  ensure_dir(cfg.out);
  std::vector<std::string> files;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.csv", k);
    emwave::save_field_csv(frames[k], (fs::path(cfg.out) / name).string());
    files.emplace_back(name);
  }
  write_manifest(cfg, "replay", std::move(files));
  return 0;
}

}  // namespace emtool
