#include <doctest.h>

#include <cmath>

#include "emwave/builders.hpp"
#include "emwave/errors.hpp"
#include "emwave/scenario.hpp"

using namespace emwave;

namespace {

Network uniform_lattice() {
  return build_lattice({.rows = 4, .cols = 4, .spacing = 100, .inertia_h = 4,
                        .damping_d = 1, .susceptance_b = 10, .voltage = 1,
                        .gen = 1.0});
}

double achieved_penetration(const Network& net) {
  double num = 0.0, den = 0.0;
  for (const Bus& b : net.buses) {
    if (b.p_mech > 0.0) {
      num += b.pv_fraction * b.p_mech;
      den += b.p_mech;
    }
  }
  return num / den;
}

}  // namespace

TEST_CASE("zero penetration is the identity") {
  Network net = uniform_lattice();
  Network out = apply_pv_scenario(net, {.penetration = 0.0});
  CHECK(identical(net, out));
}

TEST_CASE("full penetration floors every generating bus") {
  Network net = uniform_lattice();
  Network out = apply_pv_scenario(net, {.penetration = 1.0});
  for (const Bus& b : out.buses) {
    CHECK(b.pv_fraction == 1.0);
    CHECK(b.inertia_h == kHFloor);
  }
  CHECK(out.total_p_mech() == net.total_p_mech());
  CHECK(out.total_p_load() == net.total_p_load());
}

TEST_CASE("uniform generation gets penetration exactly") {
  Network out = apply_pv_scenario(uniform_lattice(), {.penetration = 0.25});
  for (const Bus& b : out.buses) {
    CHECK(b.pv_fraction == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(b.inertia_h == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("transform preserves everything except inertia and pv") {
  Network net = uniform_lattice();
  Network out = apply_pv_scenario(net, {.penetration = 0.6});
  REQUIRE(out.buses.size() == net.buses.size());
  REQUIRE(out.branches.size() == net.branches.size());
  for (std::size_t i = 0; i < net.buses.size(); ++i) {
    CHECK(out.buses[i].x == net.buses[i].x);
    CHECK(out.buses[i].y == net.buses[i].y);
    CHECK(out.buses[i].p_mech == net.buses[i].p_mech);
    CHECK(out.buses[i].p_load == net.buses[i].p_load);
    CHECK(out.buses[i].voltage == net.buses[i].voltage);
    CHECK(out.buses[i].damping_d == net.buses[i].damping_d);
  }
  for (std::size_t i = 0; i < net.branches.size(); ++i) {
    CHECK(out.branches[i].susceptance_b == net.branches[i].susceptance_b);
  }
  CHECK(std::abs(achieved_penetration(out) - 0.6) <= 1e-9);
}

TEST_CASE("higher penetration never raises inertia") {
  Network net = uniform_lattice();
  Network prev = apply_pv_scenario(net, {.penetration = 0.0});
  for (double pen : {0.1, 0.25, 0.4, 0.65, 0.9, 1.0}) {
    Network cur = apply_pv_scenario(net, {.penetration = pen});
    for (std::size_t i = 0; i < net.buses.size(); ++i) {
      CHECK(cur.buses[i].inertia_h <= prev.buses[i].inertia_h);
      CHECK(cur.buses[i].pv_fraction >= prev.buses[i].pv_fraction);
    }
    prev = std::move(cur);
  }
}

TEST_CASE("weighted siting hits the system target with clipping") {
  Network net = uniform_lattice();
  ScenarioSpec spec;
  spec.penetration = 0.5;
  // Heavily weight one bus; it saturates at 1 and the remainder spreads.
  for (const Bus& b : net.buses) spec.region_weights[b.id] = 1.0;
  spec.region_weights["b0"] = 1e6;
  Network out = apply_pv_scenario(net, spec);
  CHECK(out.buses[net.index_of("b0")].pv_fraction == 1.0);
  CHECK(std::abs(achieved_penetration(out) - 0.5) <= 1e-9);
  for (const Bus& b : out.buses) {
    CHECK(b.pv_fraction >= 0.0);
    CHECK(b.pv_fraction <= 1.0);
  }
}

TEST_CASE("two-region weighting concentrates pv") {
  Network net = uniform_lattice();
  ScenarioSpec spec;
  spec.penetration = 0.3;  // = 0.6 over the weighted half
  for (const Bus& b : net.buses) {
    spec.region_weights[b.id] = (b.x >= 200.0) ? 1.0 : 0.0;
  }
  Network out = apply_pv_scenario(net, spec);
  for (const Bus& b : out.buses) {
    if (b.x >= 200.0) {
      CHECK(b.pv_fraction == doctest::Approx(0.6).epsilon(1e-12));
    } else {
      CHECK(b.pv_fraction == 0.0);
      CHECK(b.inertia_h == 4.0);
    }
  }
}

TEST_CASE("unreachable targets are infeasible") {
  Network net = uniform_lattice();
  ScenarioSpec spec;
  spec.penetration = 0.9;
  for (const Bus& b : net.buses) spec.region_weights[b.id] = 0.0;
  spec.region_weights["b0"] = 1.0;  // one bus cannot carry 90% of 16
  try {
    apply_pv_scenario(net, spec);
    FAIL("expected InfeasiblePenetration");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::infeasible_penetration);
  }
}

TEST_CASE("scenario parameter validation") {
  Network net = uniform_lattice();
  CHECK_THROWS_AS(apply_pv_scenario(net, {.penetration = 1.5}), Error);
  CHECK_THROWS_AS(apply_pv_scenario(net, {.penetration = -0.1}), Error);
  ScenarioSpec spec;
  spec.penetration = 0.5;
  spec.region_weights["nope"] = 1.0;
  CHECK_THROWS_AS(apply_pv_scenario(net, spec), Error);
  spec.region_weights.clear();
  spec.region_weights["b0"] = -2.0;
  CHECK_THROWS_AS(apply_pv_scenario(net, spec), Error);
}
