#include "emwave/simulation.hpp"

#include <cmath>

#include "emwave/csvnum.hpp"
#include "emwave/equilibrium.hpp"
#include "emwave/errors.hpp"

namespace emwave {

namespace detail {

void check_sim_inputs(const Network& net, const Disturbance& dist,
                      const SimConfig& cfg) {
  if (!(cfg.dt > 0.0) || cfg.dt > 0.01) {
    fail(Errc::invalid_parameter, "dt must be in (0, 0.01] seconds");
  }
  if (!(dist.t_event >= 0.0)) {
    fail(Errc::invalid_disturbance, "t_event must be >= 0");
  }
  if (!(cfg.t_end > dist.t_event)) {
    fail(Errc::invalid_parameter, "t_end must exceed t_event");
  }
  if (!net.has_bus(dist.bus)) {
    fail(Errc::invalid_disturbance, "disturbance bus '" + dist.bus + "' not in network");
  }
  if (!std::isfinite(dist.delta_p)) {
    fail(Errc::invalid_disturbance, "delta_p must be finite");
  }
}

SwingSystem SwingSystem::build(const Network& net, const Disturbance& dist) {
  SwingSystem sys;
  sys.adj = Adjacency::build(net);
  const std::size_t n = net.buses.size();
  sys.accel_coef.resize(n);
  sys.damp_coef.resize(n);
  sys.p_pre.resize(n);
  const double w_s = net.omega_s();
  for (std::size_t i = 0; i < n; ++i) {
    const Bus& b = net.buses[i];
    sys.accel_coef[i] = w_s / (2.0 * b.inertia_h);
    sys.damp_coef[i] = b.damping_d / (2.0 * b.inertia_h);
    sys.p_pre[i] = b.p_mech - b.p_load;
  }
  sys.p_post = sys.p_pre;
  sys.p_post[net.index_of(dist.bus)] += dist.delta_p;
  sys.t_event = dist.t_event;
  return sys;
}

}  // namespace detail

namespace {

constexpr double kBlowupRad = 10.0 * kTwoPi;  // |freq_dev| limit of 10 Hz

struct Rk4Scratch {
  std::vector<double> k1t, k1w, k2t, k2w, k3t, k3w, at, aw, bt, bw;
  explicit Rk4Scratch(std::size_t n)
      : k1t(n), k1w(n), k2t(n), k2w(n), k3t(n), k3w(n), at(n), aw(n), bt(n),
        bw(n) {}
};

// One parallel region per step; the stage loops are fused so each pass
// evaluates a stage derivative and prepares the next stage state. Barriers
// between loops order the neighbor reads. Every element is a pure function
// of the previous stage, so results are bit-identical to the serial
// reference for any thread count.
void rk4_step(const detail::SwingSystem& sys, double t, double dt,
              std::vector<double>& theta, std::vector<double>& omega,
              Rk4Scratch& s) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(theta.size());
  const double half_dt = 0.5 * dt;
  const double sixth_dt = dt / 6.0;

  // Injections switch on whole-step boundaries (chosen by step start), so a
  // grid-aligned t_event leaves every pre-event step exactly stationary.
  const auto& p = sys.injections_at(t);

#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      s.k1t[i] = omega[i];
      s.k1w[i] = sys.bus_accel(i, theta.data(), omega.data(), p);
      s.at[i] = theta[i] + half_dt * s.k1t[i];
      s.aw[i] = omega[i] + half_dt * s.k1w[i];
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      s.k2t[i] = s.aw[i];
      s.k2w[i] = sys.bus_accel(i, s.at.data(), s.aw.data(), p);
      s.bt[i] = theta[i] + half_dt * s.k2t[i];
      s.bw[i] = omega[i] + half_dt * s.k2w[i];
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      s.k3t[i] = s.bw[i];
      s.k3w[i] = sys.bus_accel(i, s.bt.data(), s.bw.data(), p);
      s.at[i] = theta[i] + dt * s.k3t[i];
      s.aw[i] = omega[i] + dt * s.k3w[i];
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      double k4t = s.aw[i];
      double k4w = sys.bus_accel(i, s.at.data(), s.aw.data(), p);
      theta[i] += sixth_dt * (s.k1t[i] + 2.0 * s.k2t[i] + 2.0 * s.k3t[i] + k4t);
      omega[i] += sixth_dt * (s.k1w[i] + 2.0 * s.k2w[i] + 2.0 * s.k3w[i] + k4w);
    }
  }
}

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
  if ((n_steps + 1) * n > 30'000'000) {
    fail(Errc::invalid_parameter, "trajectory too large (reduce t_end or bus count)");
  }

  std::vector<double> theta = solve_equilibrium(net);
  std::vector<double> omega(n, 0.0);
  detail::SwingSystem sys = detail::SwingSystem::build(net, dist);

  TrajectorySet traj;
  traj.n_buses = n;
  traj.times.resize(n_steps + 1);
  traj.angles.resize((n_steps + 1) * n);
  traj.freq_dev.resize((n_steps + 1) * n);

  Rk4Scratch scratch(n);
  for (std::size_t step = 0;; ++step) {
    double t = static_cast<double>(step) * cfg.dt;
    traj.times[step] = t;
    double* ang = traj.angles.data() + step * n;
    double* frq = traj.freq_dev.data() + step * n;
    for (std::size_t i = 0; i < n; ++i) {
      ang[i] = theta[i];
      frq[i] = omega[i] / kTwoPi;
      if (std::abs(omega[i]) > kBlowupRad) {
        fail(Errc::numerical_blowup,
             "frequency deviation exceeded 10 Hz at bus '" + net.buses[i].id +
                 "', t=" + format_double(t) + " (unstable case or dt too large)");
      }
    }
    if (step == n_steps) break;
    rk4_step(sys, t, cfg.dt, theta, omega, scratch);
  }
  return traj;
}

double total_energy(const Network& net, std::span<const double> angles,
                    std::span<const double> rates_rad,
                    const Disturbance* post_event) {
  const std::size_t n = net.buses.size();
  if (angles.size() != n || rates_rad.size() != n) {
    fail(Errc::invalid_parameter, "state dimensions do not match network");
  }
  const double w_s = net.omega_s();
  auto index = bus_index_map(net);

  double kinetic = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    kinetic += (net.buses[i].inertia_h / w_s) * rates_rad[i] * rates_rad[i];
  }
  double potential = 0.0;
  for (const Branch& br : net.branches) {
    std::size_t a = index.at(br.from), b = index.at(br.to);
    potential -= net.buses[a].voltage * net.buses[b].voltage *
                 br.susceptance_b * std::cos(angles[a] - angles[b]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double p_net = net.buses[i].p_mech - net.buses[i].p_load;
    if (post_event && net.buses[i].id == post_event->bus) {
      p_net += post_event->delta_p;
    }
    potential += -p_net * angles[i];
  }
  return kinetic + potential;
}

double coi_frequency(const Network& net, std::span<const double> freq_dev) {
  if (freq_dev.size() != net.buses.size()) {
    fail(Errc::invalid_parameter, "state dimensions do not match network");
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    num += net.buses[i].inertia_h * freq_dev[i];
    den += net.buses[i].inertia_h;
  }
  return num / den;
}

void save_trajectory_csv(const TrajectorySet& traj, const Network& net,
                         const std::string& path) {
  std::string out;
  out.reserve(traj.n_steps() * (traj.n_buses + 1) * 12);
  out += "time";
  for (const Bus& b : net.buses) {
    out += ',';
    out += b.id;
  }
  out += '\n';
  for (std::size_t step = 0; step < traj.n_steps(); ++step) {
    out += format_double(traj.times[step]);
    for (std::size_t i = 0; i < traj.n_buses; ++i) {
      out += ',';
      out += format_double(traj.freq(step, i));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace emwave
