#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emwave/detector.hpp"

namespace emwave {

/// Regular geographic raster. Cell (i, j) sits at
/// (x_min + i*dx, y_min + j*dy) with dx = (x_max-x_min)/(nx-1), so row 0
/// lies on y_min and the last row on y_max.
struct GridSpec {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  int nx = 100, ny = 100;

  double dx() const { return (x_max - x_min) / (nx - 1); }
  double dy() const { return (y_max - y_min) / (ny - 1); }
  double x(int i) const { return x_min + i * dx(); }
  double y(int j) const { return y_min + j * dy(); }

  void validate() const;

  /// Grid covering a bounding box {x_min, x_max, y_min, y_max}.
  static GridSpec cover(const std::array<double, 4>& extent, int nx = 100,
                        int ny = 100);
};

struct ScalarField {
  GridSpec grid;
  std::vector<double> values;        ///< ny rows of nx, row-major from y_min
  std::vector<std::uint8_t> mask;    ///< 1 = valid

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * grid.nx + i;
  }
  bool valid(int i, int j) const { return mask[idx(i, j)] != 0; }
  double at(int i, int j) const { return values[idx(i, j)]; }
  std::size_t count_valid() const;
};

struct SamplePoint {
  double x, y, value;
};

/// Inverse-distance-weighted interpolation onto the grid:
/// value(c) = sum w_k v_k / sum w_k with w_k = 1/dist(c,k)^power. A cell
/// within 1e-9 of a sample takes that sample's value exactly. With
/// max_radius set, cells farther than it from every sample are masked.
ScalarField interpolate_points(std::span<const SamplePoint> samples,
                               const GridSpec& grid, double power = 2.0,
                               std::optional<double> max_radius = {});

/// TDOA map (the samples' tdoa values through interpolate_points).
ScalarField interpolate_field(const TdoaSamples& samples, const GridSpec& grid,
                              double power = 2.0,
                              std::optional<double> max_radius = {});

/// Field CSV: 4 header lines (`nx,ny` / `x_min,x_max` / `y_min,y_max` /
/// `masked_value=NaN`) then ny rows of nx comma-separated values, row 0 at
/// y_min; masked cells serialize as nan.
void save_field_csv(const ScalarField& field, const std::string& path);
ScalarField load_field_csv(const std::string& path);

namespace detail {
/// Per-cell IDW kernel shared by the OpenMP and serial reference paths.
double idw_cell(double cx, double cy, std::span<const SamplePoint> samples,
                double power);
/// Squared distance from the cell to the nearest sample.
double nearest_sample_dist2(double cx, double cy,
                            std::span<const SamplePoint> samples);
}  // namespace detail

}  // namespace emwave
