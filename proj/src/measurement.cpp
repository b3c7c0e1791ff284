#include "emwave/measurement.hpp"

#include <cmath>
#include <cstdio>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"
#include "emwave/rng.hpp"

namespace emwave {

std::vector<FrequencyTrace> sample_measurements(const TrajectorySet& traj,
                                                const Network& net,
                                                const SensorConfig& cfg) {
  if (traj.n_steps() < 2 || traj.n_buses != net.buses.size()) {
    fail(Errc::invalid_parameter, "trajectory does not match network");
  }
  const double dt = traj.times[1] - traj.times[0];
  if (!(cfg.sample_rate > 0.0)) {
    fail(Errc::invalid_parameter, "sample_rate must be > 0");
  }
  if (cfg.sample_rate > 1.0 / dt * (1.0 + 1e-12)) {
    fail(Errc::invalid_parameter, "sample_rate exceeds the simulation rate");
  }
  if (!(cfg.noise_sigma >= 0.0)) {
    fail(Errc::invalid_parameter, "noise_sigma must be >= 0");
  }

  std::vector<std::size_t> picks;
  if (cfg.sensor_buses.empty()) {
    picks.resize(net.buses.size());
    for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  } else {
    for (const std::string& id : cfg.sensor_buses) {
      if (!net.has_bus(id)) {
        fail(Errc::unknown_sensor_bus, "unknown sensor bus '" + id + "'");
      }
      picks.push_back(net.index_of(id));
    }
  }

  const double t_last = traj.times.back();
  const auto n_samples =
      static_cast<std::size_t>(std::floor(t_last * cfg.sample_rate * (1.0 + 1e-12))) + 1;

  std::vector<FrequencyTrace> traces;
  traces.reserve(picks.size());
  for (std::size_t bus : picks) {
    FrequencyTrace tr;
    tr.bus = net.buses[bus].id;
    tr.x = net.buses[bus].x;
    tr.y = net.buses[bus].y;
    tr.times.resize(n_samples);
    tr.values.resize(n_samples);
    CounterRng rng = CounterRng::derive(cfg.seed, "sensor/" + tr.bus);
    for (std::size_t k = 0; k < n_samples; ++k) {
      double t = static_cast<double>(k) / cfg.sample_rate;
      auto idx = static_cast<std::size_t>(std::llround(t / dt));
      if (idx >= traj.n_steps()) idx = traj.n_steps() - 1;
      tr.times[k] = t;
      double v = traj.freq(idx, bus);
      if (cfg.noise_sigma > 0.0) v += cfg.noise_sigma * rng.next_gaussian();
      tr.values[k] = v;
    }
    traces.push_back(std::move(tr));
  }
  return traces;
}

void save_trace_csv(const FrequencyTrace& trace, const std::string& path) {
  std::string out = "time," + trace.bus + "\n";
  out.reserve(out.size() + trace.times.size() * 24);
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out += format_double(trace.times[k]);
    out += ',';
    out += format_double(trace.values[k]);
    out += '\n';
  }
  write_text_file(path, out);
}

FrequencyTrace load_trace_csv(const std::string& path) {
  std::string text = read_text_file(path);
  FrequencyTrace tr;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (header) {
      if (cells.size() != 2 || cells[0] != "time") {
        fail(Errc::parse_error, path + ": expected header 'time,<bus_id>'");
      }
      tr.bus = std::string(cells[1]);
      header = false;
      continue;
    }
    if (cells.size() != 2) fail(Errc::parse_error, path + ": expected 2 columns");
    tr.times.push_back(parse_double(cells[0], path));
    tr.values.push_back(parse_double(cells[1], path));
  }
  if (header) fail(Errc::parse_error, path + ": empty trace file");
  return tr;
}

void save_sensor_index(const std::vector<FrequencyTrace>& traces,
                       const std::string& path) {
  std::string out = "bus,x,y\n";
  for (const FrequencyTrace& tr : traces) {
    out += tr.bus;
    out += ',';
    out += format_double(tr.x);
    out += ',';
    out += format_double(tr.y);
    out += '\n';
  }
  write_text_file(path, out);
}

std::vector<SensorPos> load_sensor_index(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<SensorPos> out;
  std::size_t pos = 0;
  bool header = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    auto cells = split_csv_line(line);
    if (cells.size() != 3) fail(Errc::parse_error, path + ": expected 3 columns");
    out.push_back({std::string(cells[0]), parse_double(cells[1], path),
                   parse_double(cells[2], path)});
  }
  return out;
}

std::string trace_filename(std::size_t index, const std::string& bus_id) {
  std::string safe;
  for (char c : bus_id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-';
    safe += ok ? c : '_';
  }
  char num[8];
  std::snprintf(num, sizeof(num), "%04zu", index);
  return "trace_" + std::string(num) + "_" + safe + ".csv";
}

}  // namespace emwave
