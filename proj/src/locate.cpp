#include "emwave/locate.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "emwave/errors.hpp"

namespace emwave {

namespace detail {

void candidate_fit(double px, double py, std::span<const TdoaEntry> entries,
                   double& residual_out, double& slowness_out) {
  double td_sum = 0.0, dd_sum = 0.0;
  for (const TdoaEntry& e : entries) {
    double d = std::hypot(px - e.x, py - e.y);
    td_sum += e.tdoa * d;
    dd_sum += d * d;
  }
  double s = dd_sum > 0.0 ? td_sum / dd_sum : 0.0;
  if (s < 0.0) s = 0.0;
  double r = 0.0;
  for (const TdoaEntry& e : entries) {
    double d = std::hypot(px - e.x, py - e.y);
    double diff = e.tdoa - s * d;
    r += diff * diff;
  }
  residual_out = r;
  slowness_out = s;
}

bool positions_collinear(std::span<const TdoaEntry> entries) {
  // Anchor a line on the most distant pair, then check every offset.
  double best_d2 = 0.0;
  std::size_t a = 0, b = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      double dx = entries[j].x - entries[i].x;
      double dy = entries[j].y - entries[i].y;
      double d2 = dx * dx + dy * dy;
      if (d2 > best_d2) {
        best_d2 = d2;
        a = i;
        b = j;
      }
    }
  }
  if (best_d2 == 0.0) return true;
  double ax = entries[a].x, ay = entries[a].y;
  double ux = entries[b].x - ax, uy = entries[b].y - ay;
  double norm = std::sqrt(best_d2);
  for (const TdoaEntry& e : entries) {
    double cross = (e.x - ax) * uy - (e.y - ay) * ux;
    if (std::abs(cross) / norm > 1e-9 * norm) return false;
  }
  return true;
}

}  // namespace detail

LocationResult locate_event(const TdoaSamples& samples, const GridSpec& grid) {
  grid.validate();
  if (samples.entries.size() < 3) {
    fail(Errc::too_few_arrivals,
         "event localization needs at least 3 arrivals, got " +
             std::to_string(samples.entries.size()));
  }

  const int nx = grid.nx, ny = grid.ny;
  std::vector<double> residual(static_cast<std::size_t>(nx) * ny);
  std::vector<double> slowness(residual.size());

#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      std::size_t c = static_cast<std::size_t>(j) * nx + i;
      detail::candidate_fit(grid.x(i), grid.y(j), samples.entries, residual[c],
                            slowness[c]);
    }
  }

  // Serial argmin keeps the (row, column) tie-break deterministic.
  std::size_t best = 0;
  for (std::size_t c = 1; c < residual.size(); ++c) {
    if (residual[c] < residual[best]) best = c;
  }

  LocationResult out;
  out.row = static_cast<int>(best) / nx;
  out.col = static_cast<int>(best) % nx;
  out.x = grid.x(out.col);
  out.y = grid.y(out.row);
  out.residual = residual[best];
  double s = slowness[best];
  out.v_hat = s > 0.0 ? 1.0 / s : std::numeric_limits<double>::infinity();
  out.collinear = detail::positions_collinear(samples.entries);
  return out;
}

}  // namespace emwave
