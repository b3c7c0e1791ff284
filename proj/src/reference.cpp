#include "emwave/reference.hpp"

#include <cmath>
#include <limits>

#include "emwave/equilibrium.hpp"
#include "emwave/errors.hpp"

namespace emwave::reference {

namespace {

constexpr double kBlowupRad = 10.0 * kTwoPi;

}  // namespace

TrajectorySet simulate(const Network& net, const Disturbance& dist,
                       const SimConfig& cfg) {
  detail::check_sim_inputs(net, dist, cfg);
  const std::size_t n = net.buses.size();
  if (cfg.t_end / cfg.dt > 1e9) {
    fail(Errc::invalid_parameter, "t_end/dt implies more than 1e9 steps");
  }
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  if (n_steps < 1) fail(Errc::invalid_parameter, "t_end shorter than one step");

  std::vector<double> theta = solve_equilibrium(net);
  std::vector<double> omega(n, 0.0);
  detail::SwingSystem sys = detail::SwingSystem::build(net, dist);

  TrajectorySet traj;
  traj.n_buses = n;
  traj.times.resize(n_steps + 1);
  traj.angles.resize((n_steps + 1) * n);
  traj.freq_dev.resize((n_steps + 1) * n);

  const double half_dt = 0.5 * cfg.dt;
  const double sixth_dt = cfg.dt / 6.0;
  std::vector<double> k1t(n), k1w(n), k2t(n), k2w(n), k3t(n), k3w(n), k4t(n),
      k4w(n), tt(n), tw(n);

  for (std::size_t step = 0;; ++step) {
    double t = static_cast<double>(step) * cfg.dt;
    traj.times[step] = t;
    for (std::size_t i = 0; i < n; ++i) {
      traj.angles[step * n + i] = theta[i];
      traj.freq_dev[step * n + i] = omega[i] / kTwoPi;
      if (std::abs(omega[i]) > kBlowupRad) {
        fail(Errc::numerical_blowup, "frequency deviation exceeded 10 Hz");
      }
    }
    if (step == n_steps) break;

    const auto& p = sys.injections_at(t);
    for (std::size_t i = 0; i < n; ++i) {
      k1t[i] = omega[i];
      k1w[i] = sys.bus_accel(i, theta.data(), omega.data(), p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      tt[i] = theta[i] + half_dt * k1t[i];
      tw[i] = omega[i] + half_dt * k1w[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      k2t[i] = tw[i];
      k2w[i] = sys.bus_accel(i, tt.data(), tw.data(), p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      tt[i] = theta[i] + half_dt * k2t[i];
      tw[i] = omega[i] + half_dt * k2w[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      k3t[i] = tw[i];
      k3w[i] = sys.bus_accel(i, tt.data(), tw.data(), p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      tt[i] = theta[i] + cfg.dt * k3t[i];
      tw[i] = omega[i] + cfg.dt * k3w[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      k4t[i] = tw[i];
      k4w[i] = sys.bus_accel(i, tt.data(), tw.data(), p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] += sixth_dt * (k1t[i] + 2.0 * k2t[i] + 2.0 * k3t[i] + k4t[i]);
      omega[i] += sixth_dt * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
    }
  }
  return traj;
}

ScalarField interpolate_points(std::span<const SamplePoint> samples,
                               const GridSpec& grid, double power,
                               std::optional<double> max_radius) {
  grid.validate();
  if (samples.empty()) fail(Errc::empty_samples, "no samples to interpolate");

  ScalarField field;
  field.grid = grid;
  field.values.assign(static_cast<std::size_t>(grid.nx) * grid.ny, 0.0);
  field.mask.assign(field.values.size(), 1);
  const double radius2 = max_radius
                             ? (*max_radius) * (*max_radius)
                             : std::numeric_limits<double>::infinity();

  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double cx = grid.x(i), cy = grid.y(j);
      std::size_t c = field.idx(i, j);
      if (max_radius &&
          emwave::detail::nearest_sample_dist2(cx, cy, samples) > radius2) {
        field.mask[c] = 0;
        field.values[c] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      field.values[c] = emwave::detail::idw_cell(cx, cy, samples, power);
    }
  }
  return field;
}

SpeedField speed_field(const ScalarField& tdoa_field, double min_grad) {
  tdoa_field.grid.validate();
  SpeedField out;
  out.grid = tdoa_field.grid;
  out.speed.assign(tdoa_field.values.size(),
                   std::numeric_limits<double>::quiet_NaN());
  out.mask.assign(tdoa_field.values.size(), 0);

  bool any = false;
  for (int j = 0; j < out.grid.ny; ++j) {
    for (int i = 0; i < out.grid.nx; ++i) {
      double grad;
      if (!emwave::detail::cell_gradient(tdoa_field, i, j, grad)) continue;
      if (grad < min_grad) continue;
      std::size_t c = out.idx(i, j);
      out.speed[c] = 1.0 / grad;
      out.mask[c] = 1;
      any = true;
    }
  }
  if (!any) fail(Errc::degenerate_field, "speed field has no computable cells");
  return out;
}

LocationResult locate_event(const TdoaSamples& samples, const GridSpec& grid) {
  grid.validate();
  if (samples.entries.size() < 3) {
    fail(Errc::too_few_arrivals, "event localization needs at least 3 arrivals");
  }
  LocationResult out;
  double best_residual = std::numeric_limits<double>::infinity();
  double best_slowness = 0.0;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      double r, s;
      emwave::detail::candidate_fit(grid.x(i), grid.y(j), samples.entries, r, s);
      if (r < best_residual) {
        best_residual = r;
        best_slowness = s;
        out.row = j;
        out.col = i;
      }
    }
  }
  out.x = grid.x(out.col);
  out.y = grid.y(out.row);
  out.residual = best_residual;
  out.v_hat = best_slowness > 0.0 ? 1.0 / best_slowness
                                  : std::numeric_limits<double>::infinity();
  out.collinear = emwave::detail::positions_collinear(samples.entries);
  return out;
}

}  // namespace emwave::reference
