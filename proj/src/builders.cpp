#include "emwave/builders.hpp"

#include <cmath>

#include "emwave/csvnum.hpp"
#include "emwave/errors.hpp"

namespace emwave {

namespace {

void check_common(int count, double spacing, double h, double d, double b,
                  double v, double f0) {
  if (count < 2) fail(Errc::invalid_parameter, "bus count must be >= 2");
  if (!(spacing > 0.0)) fail(Errc::invalid_parameter, "spacing must be > 0");
  if (!(h > 0.0)) fail(Errc::invalid_parameter, "inertia_h must be > 0");
  if (!(d > 0.0)) fail(Errc::invalid_parameter, "damping_d must be > 0");
  if (!(b > 0.0)) fail(Errc::invalid_parameter, "susceptance_b must be > 0");
  if (!(v > 0.0)) fail(Errc::invalid_parameter, "voltage must be > 0");
  if (!(f0 > 0.0)) fail(Errc::invalid_parameter, "f0 must be > 0");
}

}  // namespace

Network build_chain(const ChainParams& p) {
  check_common(p.n, p.spacing, p.inertia_h, p.damping_d, p.susceptance_b,
               p.voltage, p.f0);
  if (!std::isfinite(p.flow)) fail(Errc::invalid_parameter, "flow must be finite");

  Network net;
  net.f0 = p.f0;
  net.buses.reserve(static_cast<std::size_t>(p.n));
  for (int i = 0; i < p.n; ++i) {
    Bus b;
    b.id = "b" + format_int(i);
    b.x = static_cast<double>(i) * p.spacing;
    b.y = 0.0;
    b.inertia_h = p.inertia_h;
    b.damping_d = p.damping_d;
    b.voltage = p.voltage;
    net.buses.push_back(std::move(b));
  }
  if (p.flow != 0.0) {
    net.buses.front().p_mech = p.flow;
    net.buses.back().p_load = p.flow;
  }
  for (int i = 0; i + 1 < p.n; ++i) {
    net.branches.push_back(
        {"b" + format_int(i), "b" + format_int(i + 1), p.susceptance_b});
  }
  net.validate();
  return net;
}

Network build_lattice(const LatticeParams& p) {
  if (p.rows < 2 || p.cols < 2) {
    fail(Errc::invalid_parameter, "lattice needs rows >= 2 and cols >= 2");
  }
  check_common(p.rows * p.cols, p.spacing, p.inertia_h, p.damping_d,
               p.susceptance_b, p.voltage, p.f0);
  if (!(p.gen >= 0.0)) fail(Errc::invalid_parameter, "gen must be >= 0");
  for (const RegionScale& r : p.inertia_regions) {
    if (!(r.h_multiplier > 0.0)) {
      fail(Errc::invalid_parameter, "region h_multiplier must be > 0");
    }
  }

  Network net;
  net.f0 = p.f0;
  net.buses.reserve(static_cast<std::size_t>(p.rows) * p.cols);
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      Bus b;
      b.id = "b" + format_int(static_cast<long long>(r) * p.cols + c);
      b.x = static_cast<double>(c) * p.spacing;
      b.y = static_cast<double>(r) * p.spacing;
      b.inertia_h = p.inertia_h;
      for (const RegionScale& reg : p.inertia_regions) {
        if (b.x >= reg.x_min && b.x <= reg.x_max && b.y >= reg.y_min &&
            b.y <= reg.y_max) {
          b.inertia_h *= reg.h_multiplier;
        }
      }
      b.damping_d = p.damping_d;
      b.voltage = p.voltage;
      b.p_mech = p.gen;
      b.p_load = p.gen;
      net.buses.push_back(std::move(b));
    }
  }
  auto id_at = [&](int r, int c) {
    return "b" + format_int(static_cast<long long>(r) * p.cols + c);
  };
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      if (c + 1 < p.cols) {
        net.branches.push_back({id_at(r, c), id_at(r, c + 1), p.susceptance_b});
      }
      if (r + 1 < p.rows) {
        net.branches.push_back({id_at(r, c), id_at(r + 1, c), p.susceptance_b});
      }
    }
  }
  net.validate();
  return net;
}

}  // namespace emwave
