#include "emwave/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "emwave/errors.hpp"

namespace emwave {

void electrical_power(const Adjacency& adj, std::span<const double> theta,
                      std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = adj.row_ptr[i]; k < adj.row_ptr[i + 1]; ++k) {
      acc += adj.weight[k] * std::sin(theta[i] - theta[adj.nbr[k]]);
    }
    out[i] = acc;
  }
}

double max_power_residual(const Network& net, std::span<const double> theta) {
  Adjacency adj = Adjacency::build(net);
  std::vector<double> pe(net.buses.size());
  electrical_power(adj, theta, pe);
  double worst = 0.0;
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    double r = net.buses[i].p_mech - net.buses[i].p_load - pe[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

namespace {

// Dense LU with partial pivoting; solves in place. Returns false on a
// numerically singular pivot.
bool lu_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  std::vector<std::size_t> piv(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_abs = std::abs(a[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double v = std::abs(a[r * n + col]);
      if (v > best_abs) {
        best_abs = v;
        best = r;
      }
    }
    if (!(best_abs > 1e-300)) return false;
    piv[col] = best;
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[best * n + c]);
      std::swap(b[col], b[best]);
    }
    double inv = 1.0 / a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      a[r * n + col] = f;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    double acc = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) acc -= a[ri * n + c] * b[c];
    b[ri] = acc / a[ri * n + ri];
  }
  return true;
}

double residual_inf(const Adjacency& adj, const std::vector<double>& p_net,
                    const std::vector<double>& theta, std::vector<double>& pe,
                    std::vector<double>& res) {
  electrical_power(adj, theta, pe);
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    res[i] = p_net[i] - pe[i];
    worst = std::max(worst, std::abs(res[i]));
  }
  return worst;
}

}  // namespace

std::vector<double> solve_equilibrium(const Network& net,
                                      const EquilibriumOptions& opt) {
  net.validate();
  if (!net.balanced()) {
    fail(Errc::validation_error,
         "network is unbalanced: sum p_mech != sum p_load");
  }

  const std::size_t n = net.buses.size();
  Adjacency adj = Adjacency::build(net);
  std::vector<double> p_net(n);
  for (std::size_t i = 0; i < n; ++i) {
    p_net[i] = net.buses[i].p_mech - net.buses[i].p_load;
  }

  std::vector<double> theta(n, 0.0), pe(n), res(n);
  double worst = residual_inf(adj, p_net, theta, pe, res);

  const std::size_t m = n - 1;  // reference bus 0 eliminated
  std::vector<double> jac(m * m), rhs(m), trial(n);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (worst <= opt.tolerance) {
      // Polish: keep iterating while the residual still shrinks, so the
      // pre-disturbance state is as stationary as the arithmetic allows.
      if (worst == 0.0) return theta;
    }

    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      double diag = 0.0;
      for (std::size_t k = adj.row_ptr[i]; k < adj.row_ptr[i + 1]; ++k) {
        std::size_t j = adj.nbr[k];
        double c = adj.weight[k] * std::cos(theta[i] - theta[j]);
        diag += c;
        if (j >= 1) jac[(i - 1) * m + (j - 1)] -= c;
      }
      jac[(i - 1) * m + (i - 1)] += diag;
    }
    for (std::size_t i = 1; i < n; ++i) rhs[i - 1] = res[i];

    if (!lu_solve(jac, rhs, m)) {
      if (worst <= opt.tolerance) return theta;
      fail(Errc::no_convergence,
           "power-flow Jacobian is singular (voltage-collapsed or infeasible "
           "operating point)");
    }

    // Damped step: halve until the residual improves.
    double lambda = 1.0;
    double best_worst = worst;
    std::vector<double> best_theta = theta;
    bool improved = false;
    for (int halvings = 0; halvings < 12; ++halvings) {
      trial = theta;
      for (std::size_t i = 1; i < n; ++i) trial[i] += lambda * rhs[i - 1];
      double w = residual_inf(adj, p_net, trial, pe, res);
      if (w < best_worst) {
        best_worst = w;
        best_theta = trial;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) {
      if (worst <= opt.tolerance) return theta;  // converged; polish exhausted
      fail(Errc::no_convergence,
           "power flow did not converge (no descent step found)");
    }
    theta = std::move(best_theta);
    worst = best_worst;  // res/pe already hold the accepted trial's values
  }

  if (worst <= opt.tolerance) return theta;
  fail(Errc::no_convergence, "power flow did not converge within iteration cap");
}

}  // namespace emwave
