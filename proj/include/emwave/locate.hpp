#pragma once

#include "emwave/detector.hpp"
#include "emwave/field.hpp"

namespace emwave {

struct LocationResult {
  double x = 0.0, y = 0.0;
  double residual = 0.0;
  double v_hat = 0.0;      ///< best-fit scalar propagation speed
  int row = 0, col = 0;    ///< grid indices of the chosen cell
  bool collinear = false;  ///< sensors are collinear (1-D ambiguity)
};

/// Exhaustive grid search minimizing sum_k (tdoa_k - |pos - pos_k| / v)^2
/// jointly over candidate cells and the per-candidate closed-form
/// least-squares slowness s = 1/v (clamped non-negative). Ties broken by
/// lowest (row, column). Collinear sensor layouts are flagged, not fatal.
/// Throws Error(too_few_arrivals) with fewer than 3 samples.
LocationResult locate_event(const TdoaSamples& samples, const GridSpec& grid);

namespace detail {
/// Residual and best-fit slowness for one candidate position.
void candidate_fit(double px, double py, std::span<const TdoaEntry> entries,
                   double& residual_out, double& slowness_out);
bool positions_collinear(std::span<const TdoaEntry> entries);
}  // namespace detail

}  // namespace emwave
