#pragma once

#include <map>
#include <string>
#include <vector>

#include "emwave/field.hpp"
#include "emwave/network.hpp"
#include "emwave/speed.hpp"

namespace emwave {

/// Local PV penetration raster: IDW of per-bus pv_fraction onto the grid.
ScalarField rasterize_penetration(const Network& net, const GridSpec& grid,
                                  double power = 2.0);

/// Pearson correlation between the speed field and a co-registered scalar
/// field over jointly valid cells. Throws Error(insufficient_cells) below
/// 10 usable cells and Error(zero_variance) when either side is constant.
double pearson_correlation(const SpeedField& speed, const ScalarField& other);

/// One call for the paper-facing statistic: penetration raster + Pearson r.
double penetration_speed_correlation(const SpeedField& speed,
                                     const Network& net, const GridSpec& grid);

struct RegionStats {
  std::size_t n_cells = 0;
  double mean = 0.0;
  double median = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
};

struct NamedRegion {
  std::string name;
  std::vector<std::uint8_t> cell_mask;  ///< size nx*ny, 1 = in region
};

/// Order statistics of the valid speed cells inside each region mask.
/// Throws Error(empty_region) when a region contains no valid cell.
std::map<std::string, RegionStats> regional_speed_stats(
    const SpeedField& speed, const std::vector<NamedRegion>& regions);

/// Region mask from an axis-aligned rectangle (inclusive bounds).
std::vector<std::uint8_t> region_mask_from_rect(const GridSpec& grid,
                                                double x_min, double x_max,
                                                double y_min, double y_max);

/// Stats over every valid cell / every valid interior (non-border) cell.
RegionStats speed_stats(const SpeedField& speed);
RegionStats interior_speed_stats(const SpeedField& speed);

/// Linear-interpolation quantile of an unsorted sample (p in [0, 1]).
double quantile(std::vector<double> values, double p);

}  // namespace emwave
