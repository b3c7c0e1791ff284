#include "emwave/detector.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"

namespace emwave {

double detect_tdoa(const FrequencyTrace& trace, double event_time,
                   const DetectorConfig& cfg) {
  if (!(cfg.threshold > 0.0)) {
    fail(Errc::invalid_parameter, "detector threshold must be > 0");
  }
  if (!(cfg.fraction > 0.0 && cfg.fraction < 1.0)) {
    fail(Errc::invalid_parameter, "detector fraction must be in (0, 1)");
  }
  if (!(cfg.baseline_window > 0.0)) {
    fail(Errc::invalid_parameter, "baseline_window must be > 0");
  }
  const std::size_t n = trace.times.size();

  double baseline_sum = 0.0;
  std::size_t baseline_count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = trace.times[k];
    if (t >= event_time - cfg.baseline_window && t < event_time) {
      baseline_sum += trace.values[k];
      ++baseline_count;
    }
  }
  if (baseline_count == 0) {
    fail(Errc::insufficient_baseline,
         "trace '" + trace.bus + "' has no samples in the baseline window");
  }
  const double baseline = baseline_sum / static_cast<double>(baseline_count);

  double threshold = cfg.threshold;
  if (cfg.mode == ThresholdMode::relative) {
    double peak = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (trace.times[k] > event_time) {
        peak = std::max(peak, std::abs(trace.values[k] - baseline));
      }
    }
    threshold = cfg.fraction * peak;
    if (!(threshold > 0.0)) {
      fail(Errc::no_crossing, "trace '" + trace.bus + "' never deviates");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (!(trace.times[k] > event_time)) continue;
    double dev = std::abs(trace.values[k] - baseline);
    if (dev >= threshold) {
      double t_cross = trace.times[k];
      if (k > 0) {
        double prev_dev = std::abs(trace.values[k - 1] - baseline);
        double span = trace.times[k] - trace.times[k - 1];
        if (prev_dev < threshold && dev > prev_dev && span > 0.0) {
          t_cross = trace.times[k - 1] +
                    span * (threshold - prev_dev) / (dev - prev_dev);
        }
      }
      return std::max(0.0, t_cross - event_time);
    }
  }
  fail(Errc::no_crossing,
       "trace '" + trace.bus + "' never crossed the detection threshold");
}

TdoaSamples build_tdoa_samples(std::span<const FrequencyTrace> traces,
                               const Network& net, const Disturbance& event,
                               const DetectorConfig& cfg) {
  std::optional<std::pair<double, double>> pos;
  if (net.has_bus(event.bus)) {
    const Bus& b = net.buses[net.index_of(event.bus)];
    pos = {b.x, b.y};
  }
  return build_tdoa_samples(traces, event.t_event, pos, cfg);
}

TdoaSamples build_tdoa_samples(std::span<const FrequencyTrace> traces,
                               double event_time,
                               std::optional<std::pair<double, double>> event_pos,
                               const DetectorConfig& cfg) {
  TdoaSamples out;
  out.event_time = event_time;
  out.event_pos = event_pos;

  std::set<std::pair<double, double>> positions;
  for (const FrequencyTrace& tr : traces) {
    try {
      double tdoa = detect_tdoa(tr, event_time, cfg);
      if (!positions.insert({tr.x, tr.y}).second) {
        fail(Errc::validation_error,
             "duplicate sensor position for trace '" + tr.bus + "'");
      }
      out.entries.push_back({tr.bus, tr.x, tr.y, tdoa});
    } catch (const Error& e) {
      if (e.code() == Errc::no_crossing || e.code() == Errc::insufficient_baseline) {
        out.exclusions.push_back({tr.bus, errc_name(e.code())});
      } else {
        throw;
      }
    }
  }
  if (out.entries.size() < 3) {
    fail(Errc::too_few_arrivals,
         "only " + std::to_string(out.entries.size()) +
             " usable arrivals (need at least 3)");
  }
  return out;
}

void save_tdoa_csv(const TdoaSamples& samples, const std::string& path) {
  std::string out = "bus,x,y,tdoa_s\n";
  for (const TdoaEntry& e : samples.entries) {
    out += e.bus;
    out += ',';
    out += format_double(e.x);
    out += ',';
    out += format_double(e.y);
    out += ',';
    out += format_double(e.tdoa);
    out += '\n';
  }
  write_text_file(path, out);
}

TdoaSamples load_tdoa_csv(const std::string& path) {
  std::string text = read_text_file(path);
  TdoaSamples out;
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
    if (cells.size() != 4) fail(Errc::parse_error, path + ": expected 4 columns");
    out.entries.push_back({std::string(cells[0]), parse_double(cells[1], path),
                           parse_double(cells[2], path),
                           parse_double(cells[3], path)});
  }
  return out;
}

}  // namespace emwave
