#include "emwave/speed.hpp"

#include <cmath>
#include <limits>

#include "emwave/errors.hpp"

namespace emwave {

namespace detail {

namespace {

// One-axis derivative with masked-neighbor fallback: central when both
// neighbors are valid, one-sided against the cell's own value otherwise.
bool axis_derivative(const ScalarField& f, int i, int j, int di, int dj,
                     double step, double& out) {
  int il = i - di, jl = j - dj;
  int ih = i + di, jh = j + dj;
  bool has_low = il >= 0 && jl >= 0 && il < f.grid.nx && jl < f.grid.ny &&
                 f.valid(il, jl);
  bool has_high = ih < f.grid.nx && jh < f.grid.ny && ih >= 0 && jh >= 0 &&
                  f.valid(ih, jh);
  if (has_low && has_high) {
    out = (f.at(ih, jh) - f.at(il, jl)) / (2.0 * step);
    return true;
  }
  if (has_high) {
    out = (f.at(ih, jh) - f.at(i, j)) / step;
    return true;
  }
  if (has_low) {
    out = (f.at(i, j) - f.at(il, jl)) / step;
    return true;
  }
  return false;
}

}  // namespace

bool cell_gradient(const ScalarField& f, int i, int j, double& grad_out) {
  if (!f.valid(i, j)) return false;
  double gx, gy;
  if (!axis_derivative(f, i, j, 1, 0, f.grid.dx(), gx)) return false;
  if (!axis_derivative(f, i, j, 0, 1, f.grid.dy(), gy)) return false;
  grad_out = std::hypot(gx, gy);
  return true;
}

}  // namespace detail

SpeedField speed_field(const ScalarField& tdoa_field, double min_grad) {
  tdoa_field.grid.validate();
  if (!(min_grad > 0.0)) fail(Errc::invalid_parameter, "min_grad must be > 0");

  SpeedField out;
  out.grid = tdoa_field.grid;
  out.speed.assign(tdoa_field.values.size(),
                   std::numeric_limits<double>::quiet_NaN());
  out.mask.assign(tdoa_field.values.size(), 0);

  const int nx = out.grid.nx, ny = out.grid.ny;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double grad;
      if (!detail::cell_gradient(tdoa_field, i, j, grad)) continue;
      if (grad < min_grad) continue;
      std::size_t c = out.idx(i, j);
      out.speed[c] = 1.0 / grad;
      out.mask[c] = 1;
    }
  }

  bool any = false;
  for (std::uint8_t m : out.mask) {
    if (m) {
      any = true;
      break;
    }
  }
  if (!any) {
    fail(Errc::degenerate_field,
         "speed field has no computable cells (flat or fully masked input)");
  }
  return out;
}

}  // namespace emwave
