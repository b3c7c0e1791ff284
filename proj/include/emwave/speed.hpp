#pragma once

#include "emwave/field.hpp"

namespace emwave {

struct SpeedField {
  GridSpec grid;
  std::vector<double> speed;  ///< distance-units per second
  std::vector<std::uint8_t> mask;

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * grid.nx + i;
  }
  bool valid(int i, int j) const { return mask[idx(i, j)] != 0; }
  double at(int i, int j) const { return speed[idx(i, j)]; }
};

/// Wave speed from the arrival-time field: speed = 1 / |grad T| (the
/// eikonal relation). Central differences on interior cells, one-sided at
/// boundaries and next to masked neighbors. Cells whose gradient magnitude
/// falls below min_grad (flat plateaus, unbounded implied speed) or that
/// lack a usable neighbor on either axis are masked.
/// Throws Error(degenerate_field) when no cell is computable.
SpeedField speed_field(const ScalarField& tdoa_field, double min_grad = 1e-6);

namespace detail {
/// Gradient magnitude at one cell; false when not computable.
bool cell_gradient(const ScalarField& f, int i, int j, double& grad_out);
}  // namespace detail

}  // namespace emwave
