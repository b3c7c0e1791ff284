#include "emwave/replay.hpp"

#include <algorithm>
#include <cmath>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"

namespace emwave {

namespace {

double trace_value_at(const FrequencyTrace& tr, double t) {
  if (tr.times.empty() || t < tr.times.front() || t > tr.times.back()) {
    fail(Errc::time_out_of_range,
         "frame time " + format_double(t) + " outside coverage of trace '" +
             tr.bus + "'");
  }
  auto it = std::lower_bound(tr.times.begin(), tr.times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - tr.times.begin());
  if (hi == 0) return tr.values.front();
  if (tr.times[hi] == t) return tr.values[hi];
  std::size_t lo = hi - 1;
  double span = tr.times[hi] - tr.times[lo];
  double f = (t - tr.times[lo]) / span;
  return tr.values[lo] + f * (tr.values[hi] - tr.values[lo]);
}

}  // namespace

std::vector<ScalarField> replay_frames(std::span<const FrequencyTrace> traces,
                                       const GridSpec& grid,
                                       std::span<const double> frame_times,
                                       double power) {
  grid.validate();
  if (traces.empty()) fail(Errc::empty_samples, "no traces to replay");

  std::vector<ScalarField> frames;
  frames.reserve(frame_times.size());
  std::vector<SamplePoint> pts(traces.size());
  for (double t : frame_times) {
    for (std::size_t k = 0; k < traces.size(); ++k) {
      pts[k] = {traces[k].x, traces[k].y, trace_value_at(traces[k], t)};
    }
    frames.push_back(interpolate_points(pts, grid, power));
  }
  return frames;
}

}  // namespace emwave
