#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "emwave/builders.hpp"
#include "emwave/detector.hpp"
#include "emwave/field.hpp"
#include "emwave/locate.hpp"
#include "emwave/measurement.hpp"
#include "emwave/reference.hpp"
#include "emwave/rng.hpp"
#include "emwave/simulation.hpp"
#include "emwave/speed.hpp"

using namespace emwave;

// The OpenMP kernels must agree with the serial references bit for bit:
// every output element is a pure function of the inputs, so scheduling and
// thread count cannot change results.

TEST_CASE("simulate matches the serial reference bitwise") {
  for (int threads : {1, 2, 4}) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    Network chain = build_chain({.n = 20, .susceptance_b = 10, .flow = 2.0});
    Disturbance dist{.bus = "b4", .delta_p = -0.15, .t_event = 0.3};
    SimConfig cfg{.dt = 1e-3, .t_end = 2.0};
    TrajectorySet par = simulate(chain, dist, cfg);
    TrajectorySet ser = reference::simulate(chain, dist, cfg);
    CHECK(par.angles == ser.angles);
    CHECK(par.freq_dev == ser.freq_dev);

    Network lattice = build_lattice({.rows = 7, .cols = 9, .spacing = 100});
    Disturbance d2{.bus = "b0", .delta_p = -0.4, .t_event = 0.2};
    SimConfig c2{.dt = 2e-3, .t_end = 1.5};
    TrajectorySet par2 = simulate(lattice, d2, c2);
    TrajectorySet ser2 = reference::simulate(lattice, d2, c2);
    CHECK(par2.angles == ser2.angles);
    CHECK(par2.freq_dev == ser2.freq_dev);
  }
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif
}

TEST_CASE("interpolation and gradient kernels match bitwise") {
  CounterRng rng(31415);
  std::vector<SamplePoint> pts;
  for (int k = 0; k < 60; ++k) {
    pts.push_back({rng.next_unit() * 1000.0, rng.next_unit() * 1000.0,
                   rng.next_unit() * 2.0});
  }
  GridSpec g{.x_min = 0, .x_max = 1000, .y_min = 0, .y_max = 1000,
             .nx = 83, .ny = 61};
  ScalarField a = interpolate_points(pts, g, 2.0, 400.0);
  ScalarField b = reference::interpolate_points(pts, g, 2.0, 400.0);
  REQUIRE(a.values.size() == b.values.size());
  CHECK(a.mask == b.mask);
  for (std::size_t c = 0; c < a.values.size(); ++c) {
    if (a.mask[c]) {
      CHECK(a.values[c] == b.values[c]);
    }
  }

  SpeedField sa = speed_field(a);
  SpeedField sb = reference::speed_field(b);
  CHECK(sa.mask == sb.mask);
  for (std::size_t c = 0; c < sa.speed.size(); ++c) {
    if (sa.mask[c]) CHECK(sa.speed[c] == sb.speed[c]);
  }
}

TEST_CASE("localization matches the serial reference") {
  CounterRng rng(2718);
  TdoaSamples s;
  for (int k = 0; k < 24; ++k) {
    double x = rng.next_unit() * 800.0, y = rng.next_unit() * 800.0;
    s.entries.push_back({"s" + std::to_string(k), x, y,
                         std::hypot(x - 300.0, y - 500.0) / 1700.0 +
                             0.002 * rng.next_gaussian()});
  }
  GridSpec g{.x_min = 0, .x_max = 800, .y_min = 0, .y_max = 800,
             .nx = 41, .ny = 41};
  LocationResult a = locate_event(s, g);
  LocationResult b = reference::locate_event(s, g);
  CHECK(a.row == b.row);
  CHECK(a.col == b.col);
  CHECK(a.residual == b.residual);
  CHECK(a.v_hat == b.v_hat);
  CHECK(a.collinear == b.collinear);
}
