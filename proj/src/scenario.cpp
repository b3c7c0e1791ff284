#include "emwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "emwave/errors.hpp"

namespace emwave {

Network apply_pv_scenario(const Network& net, const ScenarioSpec& spec,
                          double h_floor) {
  if (!(spec.penetration >= 0.0 && spec.penetration <= 1.0)) {
    fail(Errc::invalid_parameter, "penetration must be in [0, 1]");
  }
  for (const auto& [id, w] : spec.region_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(Errc::invalid_parameter,
           "region weight for '" + id + "' must be non-negative");
    }
    if (!net.has_bus(id)) {
      fail(Errc::invalid_parameter,
           "region weight references unknown bus '" + id + "'");
    }
  }
  net.validate(h_floor);

  const std::size_t n = net.buses.size();
  std::vector<double> weight(n, 1.0);
  if (!spec.region_weights.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      auto it = spec.region_weights.find(net.buses[i].id);
      weight[i] = (it == spec.region_weights.end()) ? 0.0 : it->second;
    }
  }

  double total_gen = 0.0;
  for (const Bus& b : net.buses) {
    if (b.p_mech > 0.0) total_gen += b.p_mech;
  }

  Network out = net;
  for (Bus& b : out.buses) b.pv_fraction = 0.0;

  if (spec.penetration > 0.0) {
    if (total_gen <= 0.0) {
      fail(Errc::infeasible_penetration,
           "no generating buses to displace (total p_mech <= 0)");
    }
    double target = spec.penetration * total_gen;

    // Water-filling: pv_i = alpha * w_i on the unclipped set, clipped at 1.
    std::vector<char> clipped(n, 0);
    double assigned_by_clipped = 0.0;
    for (int round = 0; round < static_cast<int>(n) + 1; ++round) {
      double denom = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!clipped[i] && net.buses[i].p_mech > 0.0) {
          denom += weight[i] * net.buses[i].p_mech;
        }
      }
      double remaining = target - assigned_by_clipped;
      if (remaining <= 0.0) break;
      if (denom <= 0.0) {
        fail(Errc::infeasible_penetration,
             "penetration target unreachable with the given region weights");
      }
      double alpha = remaining / denom;
      bool newly_clipped = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (clipped[i] || !(net.buses[i].p_mech > 0.0)) continue;
        if (alpha * weight[i] > 1.0) {
          clipped[i] = 1;
          out.buses[i].pv_fraction = 1.0;
          assigned_by_clipped += net.buses[i].p_mech;
          newly_clipped = true;
        }
      }
      if (!newly_clipped) {
        for (std::size_t i = 0; i < n; ++i) {
          if (clipped[i] || !(net.buses[i].p_mech > 0.0)) continue;
          out.buses[i].pv_fraction = std::min(1.0, alpha * weight[i]);
        }
        break;
      }
    }

    double achieved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (net.buses[i].p_mech > 0.0) {
        achieved += out.buses[i].pv_fraction * net.buses[i].p_mech;
      }
    }
    if (std::abs(achieved / total_gen - spec.penetration) > 1e-9) {
      fail(Errc::infeasible_penetration,
           "penetration target unreachable: achieved " +
               std::to_string(achieved / total_gen) + " of requested " +
               std::to_string(spec.penetration));
    }
  }

  for (Bus& b : out.buses) {
    b.inertia_h = std::max(b.inertia_h * (1.0 - b.pv_fraction), h_floor);
  }
  return out;
}

}  // namespace emwave
