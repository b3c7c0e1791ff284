#include "emwave/stats.hpp"

#include <algorithm>
#include <cmath>

#include "emwave/errors.hpp"

namespace emwave {

ScalarField rasterize_penetration(const Network& net, const GridSpec& grid,
                                  double power) {
  std::vector<SamplePoint> pts;
  pts.reserve(net.buses.size());
  for (const Bus& b : net.buses) pts.push_back({b.x, b.y, b.pv_fraction});
  return interpolate_points(pts, grid, power);
}

double pearson_correlation(const SpeedField& speed, const ScalarField& other) {
  if (speed.grid.nx != other.grid.nx || speed.grid.ny != other.grid.ny) {
    fail(Errc::invalid_parameter, "fields are not co-registered");
  }
  std::vector<double> xs, ys;
  for (std::size_t c = 0; c < speed.speed.size(); ++c) {
    if (speed.mask[c] && other.mask[c]) {
      xs.push_back(speed.speed[c]);
      ys.push_back(other.values[c]);
    }
  }
  if (xs.size() < 10) {
    fail(Errc::insufficient_cells,
         "only " + std::to_string(xs.size()) +
             " jointly valid cells (need at least 10)");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double dx = xs[k] - mx, dy = ys[k] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  double scale_x = std::abs(mx) + 1.0, scale_y = std::abs(my) + 1.0;
  if (sxx <= n * 1e-24 * scale_x * scale_x || syy <= n * 1e-24 * scale_y * scale_y) {
    fail(Errc::zero_variance,
         "correlation undefined: one of the fields is constant");
  }
  return sxy / std::sqrt(sxx * syy);
}

double penetration_speed_correlation(const SpeedField& speed,
                                     const Network& net, const GridSpec& grid) {
  return pearson_correlation(speed, rasterize_penetration(net, grid));
}

double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  double pos = p * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  double f = pos - static_cast<double>(lo);
  return values[lo] + f * (values[lo + 1] - values[lo]);
}

namespace {

RegionStats stats_of(std::vector<double> vals) {
  RegionStats st;
  st.n_cells = vals.size();
  double sum = 0.0;
  for (double v : vals) sum += v;
  st.mean = sum / static_cast<double>(vals.size());
  st.median = quantile(vals, 0.5);
  st.p5 = quantile(vals, 0.05);
  st.p95 = quantile(std::move(vals), 0.95);
  return st;
}

}  // namespace

std::map<std::string, RegionStats> regional_speed_stats(
    const SpeedField& speed, const std::vector<NamedRegion>& regions) {
  std::map<std::string, RegionStats> out;
  for (const NamedRegion& reg : regions) {
    if (reg.cell_mask.size() != speed.speed.size()) {
      fail(Errc::invalid_parameter,
           "region '" + reg.name + "' mask does not match the grid");
    }
    std::vector<double> vals;
    for (std::size_t c = 0; c < speed.speed.size(); ++c) {
      if (reg.cell_mask[c] && speed.mask[c]) vals.push_back(speed.speed[c]);
    }
    if (vals.empty()) {
      fail(Errc::empty_region, "region '" + reg.name + "' has no valid cells");
    }
    out[reg.name] = stats_of(std::move(vals));
  }
  return out;
}

std::vector<std::uint8_t> region_mask_from_rect(const GridSpec& grid,
                                                double x_min, double x_max,
                                                double y_min, double y_max) {
  grid.validate();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(grid.nx) * grid.ny, 0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double x = grid.x(i), y = grid.y(j);
      if (x >= x_min && x <= x_max && y >= y_min && y <= y_max) {
        mask[static_cast<std::size_t>(j) * grid.nx + i] = 1;
      }
    }
  }
  return mask;
}

RegionStats speed_stats(const SpeedField& speed) {
  std::vector<double> vals;
  for (std::size_t c = 0; c < speed.speed.size(); ++c) {
    if (speed.mask[c]) vals.push_back(speed.speed[c]);
  }
  if (vals.empty()) fail(Errc::empty_region, "speed field has no valid cells");
  return stats_of(std::move(vals));
}

RegionStats interior_speed_stats(const SpeedField& speed) {
  std::vector<double> vals;
  for (int j = 1; j + 1 < speed.grid.ny; ++j) {
    for (int i = 1; i + 1 < speed.grid.nx; ++i) {
      if (speed.valid(i, j)) vals.push_back(speed.at(i, j));
    }
  }
  if (vals.empty()) {
    fail(Errc::empty_region, "speed field has no valid interior cells");
  }
  return stats_of(std::move(vals));
}

}  // namespace emwave
