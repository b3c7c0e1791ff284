// Benchmark comparing the OpenMP kernels against their serial references.
// Also verifies that both paths agree bit for bit, which is the contract
// the test suite enforces on smaller cases.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "emwave/builders.hpp"
#include "emwave/detector.hpp"
#include "emwave/field.hpp"
#include "emwave/locate.hpp"
#include "emwave/reference.hpp"
#include "emwave/rng.hpp"
#include "emwave/simulation.hpp"
#include "emwave/speed.hpp"

using namespace emwave;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int failures = 0;

void report(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-22s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              name, serial_ms, parallel_ms, serial_ms / parallel_ms,
              match ? "bitwise-equal" : "MISMATCH");
  if (!match) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  // swing integration
  {
    int side = quick ? 12 : 30;
    double t_end = quick ? 0.5 : 2.0;
    Network net = build_lattice({.rows = side, .cols = side, .spacing = 100});
    Disturbance dist{.bus = "b0", .delta_p = -0.5, .t_event = 0.1};
    SimConfig cfg{.dt = 1e-3, .t_end = t_end};

    auto t0 = Clock::now();
    TrajectorySet ser = reference::simulate(net, dist, cfg);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    TrajectorySet par = simulate(net, dist, cfg);
    double parallel_ms = ms_since(t0);
    report("swing rk4", serial_ms, parallel_ms,
           ser.angles == par.angles && ser.freq_dev == par.freq_dev);
  }

  // IDW interpolation
  std::vector<SamplePoint> pts;
  {
    CounterRng rng(7);
    int n_samples = quick ? 100 : 900;
    for (int k = 0; k < n_samples; ++k) {
      pts.push_back({rng.next_unit() * 2900.0, rng.next_unit() * 2900.0,
                     rng.next_unit()});
    }
  }
  GridSpec grid{0, 2900, 0, 2900, quick ? 60 : 220, quick ? 60 : 220};
  ScalarField field;
  {
    auto t0 = Clock::now();
    ScalarField ser = reference::interpolate_points(pts, grid);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    field = interpolate_points(pts, grid);
    double parallel_ms = ms_since(t0);
    report("idw interpolation", serial_ms, parallel_ms,
           ser.values == field.values && ser.mask == field.mask);
  }

  // gradient speed field
  {
    auto t0 = Clock::now();
    SpeedField ser = reference::speed_field(field);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    SpeedField par = speed_field(field);
    double parallel_ms = ms_since(t0);
    bool match = ser.mask == par.mask;
    if (match) {
      for (std::size_t c = 0; c < ser.speed.size(); ++c) {
        if (ser.mask[c] && ser.speed[c] != par.speed[c]) {
          match = false;
          break;
        }
      }
    }
    report("gradient speed", serial_ms, parallel_ms, match);
  }

  // localization grid search
  {
    TdoaSamples samples;
    CounterRng rng(11);
    int n_sensors = quick ? 60 : 400;
    for (int k = 0; k < n_sensors; ++k) {
      double x = rng.next_unit() * 2900.0, y = rng.next_unit() * 2900.0;
      samples.entries.push_back({"s" + std::to_string(k), x, y,
                                 std::hypot(x - 800.0, y - 1400.0) / 2000.0});
    }
    GridSpec g{0, 2900, 0, 2900, quick ? 80 : 250, quick ? 80 : 250};
    auto t0 = Clock::now();
    LocationResult ser = reference::locate_event(samples, g);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    LocationResult par = locate_event(samples, g);
    double parallel_ms = ms_since(t0);
    report("locate grid search", serial_ms, parallel_ms,
           ser.row == par.row && ser.col == par.col &&
               ser.residual == par.residual && ser.v_hat == par.v_hat);
  }

  return failures == 0 ? 0 : 1;
}
