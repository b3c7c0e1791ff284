#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emwave/measurement.hpp"
#include "emwave/network.hpp"
#include "emwave/simulation.hpp"

namespace emwave {

enum class ThresholdMode { absolute, relative };

struct DetectorConfig {
  ThresholdMode mode = ThresholdMode::absolute;
  /// Absolute mode: frequency-deviation magnitude (Hz) that defines arrival.
  double threshold = 0.003;
  /// Relative mode: threshold = fraction * max |deviation| of the trace.
  double fraction = 0.2;
  /// Seconds before the event used to estimate the pre-event mean.
  double baseline_window = 2.0;
};

/// Time Delay of Arrival: seconds from `event_time` to the first point at
/// which |value - baseline_mean| reaches the effective threshold. The
/// crossing is refined to sub-sample resolution by linear interpolation of
/// the absolute deviation between the bracketing samples.
/// Throws Error(no_crossing) when the threshold is never reached and
/// Error(insufficient_baseline) when no samples fall in the baseline window.
double detect_tdoa(const FrequencyTrace& trace, double event_time,
                   const DetectorConfig& cfg);

struct TdoaEntry {
  std::string bus;
  double x, y;
  double tdoa;  ///< seconds
};

struct Exclusion {
  std::string bus;
  std::string reason;
};

struct TdoaSamples {
  std::vector<TdoaEntry> entries;
  double event_time = 0.0;
  std::optional<std::pair<double, double>> event_pos;
  std::vector<Exclusion> exclusions;
};

/// Runs the detector on every trace, collecting successes and recording
/// per-trace exclusions (no_crossing / insufficient_baseline). Requires at
/// least 3 usable detections; throws Error(too_few_arrivals) otherwise.
TdoaSamples build_tdoa_samples(std::span<const FrequencyTrace> traces,
                               double event_time,
                               std::optional<std::pair<double, double>> event_pos,
                               const DetectorConfig& cfg);

/// Convenience overload resolving the event position from the disturbed bus.
TdoaSamples build_tdoa_samples(std::span<const FrequencyTrace> traces,
                               const Network& net, const Disturbance& event,
                               const DetectorConfig& cfg);

/// CSV export/import, header `bus,x,y,tdoa_s`.
void save_tdoa_csv(const TdoaSamples& samples, const std::string& path);
TdoaSamples load_tdoa_csv(const std::string& path);

}  // namespace emwave
