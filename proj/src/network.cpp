#include "emwave/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "emwave/errors.hpp"

namespace emwave {

std::unordered_map<std::string, std::size_t> bus_index_map(const Network& net) {
  std::unordered_map<std::string, std::size_t> map;
  map.reserve(net.buses.size());
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    map.emplace(net.buses[i].id, i);
  }
  return map;
}

std::size_t Network::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < buses.size(); ++i) {
    if (buses[i].id == id) return i;
  }
  fail(Errc::validation_error, "unknown bus id '" + id + "'");
}

bool Network::has_bus(const std::string& id) const {
  return std::any_of(buses.begin(), buses.end(),
                     [&](const Bus& b) { return b.id == id; });
}

double Network::total_p_mech() const {
  double s = 0.0;
  for (const Bus& b : buses) s += b.p_mech;
  return s;
}

double Network::total_p_load() const {
  double s = 0.0;
  for (const Bus& b : buses) s += b.p_load;
  return s;
}

std::array<double, 4> Network::extent() const {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min, y_min = x_min, y_max = -x_min;
  for (const Bus& b : buses) {
    x_min = std::min(x_min, b.x);
    x_max = std::max(x_max, b.x);
    y_min = std::min(y_min, b.y);
    y_max = std::max(y_max, b.y);
  }
  return {x_min, x_max, y_min, y_max};
}

bool Network::balanced(double tol) const {
  double scale = 1.0;
  for (const Bus& b : buses) scale += std::abs(b.p_mech) + std::abs(b.p_load);
  return std::abs(total_p_mech() - total_p_load()) <= tol * scale;
}

void Network::validate(double h_floor) const {
  if (buses.empty()) fail(Errc::validation_error, "network has no buses");
  if (!(f0 > 0.0)) fail(Errc::validation_error, "nominal frequency must be positive");

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(buses.size());
  for (std::size_t i = 0; i < buses.size(); ++i) {
    const Bus& b = buses[i];
    if (b.id.empty()) fail(Errc::validation_error, "bus with empty id");
    if (!index.emplace(b.id, i).second) {
      fail(Errc::validation_error, "duplicate bus id '" + b.id + "'");
    }
    if (!(b.voltage > 0.0) || !std::isfinite(b.voltage)) {
      fail(Errc::validation_error, "bus '" + b.id + "': voltage must be > 0");
    }
    if (!(b.inertia_h >= h_floor) || !std::isfinite(b.inertia_h)) {
      fail(Errc::validation_error,
           "bus '" + b.id + "': inertia_h below floor or non-finite");
    }
    if (!(b.damping_d >= 0.0) || !std::isfinite(b.damping_d)) {
      fail(Errc::validation_error, "bus '" + b.id + "': damping_d must be >= 0");
    }
    if (!(b.pv_fraction >= 0.0 && b.pv_fraction <= 1.0)) {
      fail(Errc::validation_error,
           "bus '" + b.id + "': pv_fraction outside [0, 1]");
    }
    if (!std::isfinite(b.x) || !std::isfinite(b.y) ||
        !std::isfinite(b.p_mech) || !std::isfinite(b.p_load)) {
      fail(Errc::validation_error, "bus '" + b.id + "': non-finite field");
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Branch& br : branches) {
    auto it_f = index.find(br.from);
    if (it_f == index.end()) {
      fail(Errc::validation_error,
           "branch references unknown bus id '" + br.from + "'");
    }
    auto it_t = index.find(br.to);
    if (it_t == index.end()) {
      fail(Errc::validation_error,
           "branch references unknown bus id '" + br.to + "'");
    }
    if (it_f->second == it_t->second) {
      fail(Errc::validation_error, "self-loop branch at bus '" + br.from + "'");
    }
    if (!(br.susceptance_b > 0.0) || !std::isfinite(br.susceptance_b)) {
      fail(Errc::validation_error,
           "branch " + br.from + "-" + br.to + ": susceptance must be > 0");
    }
    auto key = std::minmax(it_f->second, it_t->second);
    if (!seen.insert({key.first, key.second}).second) {
      fail(Errc::validation_error,
           "duplicate branch between '" + br.from + "' and '" + br.to + "'");
    }
  }

  // Connectivity (single synchronous island).
  std::vector<std::vector<std::size_t>> adj(buses.size());
  for (const Branch& br : branches) {
    std::size_t a = index.at(br.from), b = index.at(br.to);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> visited(buses.size(), 0);
  std::vector<std::size_t> stack{0};
  visited[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adj[u]) {
      if (!visited[v]) {
        visited[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  if (count != buses.size()) {
    for (std::size_t i = 0; i < buses.size(); ++i) {
      if (!visited[i]) {
        fail(Errc::validation_error,
             "network is disconnected: bus '" + buses[i].id +
                 "' unreachable from '" + buses[0].id + "'");
      }
    }
  }
}

bool identical(const Network& a, const Network& b) {
  auto same = [](double x, double y) {
    return x == y || (std::isnan(x) && std::isnan(y));
  };
  if (a.f0 != b.f0 || a.buses.size() != b.buses.size() ||
      a.branches.size() != b.branches.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.buses.size(); ++i) {
    const Bus& p = a.buses[i];
    const Bus& q = b.buses[i];
    if (p.id != q.id || !same(p.x, q.x) || !same(p.y, q.y) ||
        !same(p.inertia_h, q.inertia_h) || !same(p.damping_d, q.damping_d) ||
        !same(p.voltage, q.voltage) || !same(p.p_mech, q.p_mech) ||
        !same(p.p_load, q.p_load) || !same(p.pv_fraction, q.pv_fraction)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    const Branch& p = a.branches[i];
    const Branch& q = b.branches[i];
    if (p.from != q.from || p.to != q.to ||
        !same(p.susceptance_b, q.susceptance_b)) {
      return false;
    }
  }
  return true;
}

Adjacency Adjacency::build(const Network& net) {
  const std::size_t n = net.buses.size();
  auto index = bus_index_map(net);

  std::vector<std::size_t> degree(n, 0);
  for (const Branch& br : net.branches) {
    ++degree[index.at(br.from)];
    ++degree[index.at(br.to)];
  }

  Adjacency adj;
  adj.row_ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adj.row_ptr[i + 1] = adj.row_ptr[i] + degree[i];
  adj.nbr.assign(adj.row_ptr[n], 0);
  adj.weight.assign(adj.row_ptr[n], 0.0);

  std::vector<std::size_t> cursor(adj.row_ptr.begin(), adj.row_ptr.end() - 1);
  for (const Branch& br : net.branches) {
    std::size_t a = index.at(br.from), b = index.at(br.to);
    double w = net.buses[a].voltage * net.buses[b].voltage * br.susceptance_b;
    adj.nbr[cursor[a]] = b;
    adj.weight[cursor[a]++] = w;
    adj.nbr[cursor[b]] = a;
    adj.weight[cursor[b]++] = w;
  }
  return adj;
}

}  // namespace emwave
