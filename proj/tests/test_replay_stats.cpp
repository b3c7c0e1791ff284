#include <doctest.h>

#include <cmath>

#include "emwave/builders.hpp"
#include "emwave/detector.hpp"
#include "emwave/errors.hpp"
#include "emwave/field.hpp"
#include "emwave/measurement.hpp"
#include "emwave/replay.hpp"
#include "emwave/simulation.hpp"
#include "emwave/speed.hpp"
#include "emwave/stats.hpp"

using namespace emwave;

namespace {

struct LatticeRun {
  Network net;
  Disturbance dist;
  std::vector<FrequencyTrace> traces;
  GridSpec grid;

  LatticeRun(LatticeParams params, Disturbance d, double t_end,
             double sample_rate = 50.0)
      : net(build_lattice(params)), dist(d) {
    TrajectorySet traj = simulate(net, dist, {.dt = 1e-3, .t_end = t_end});
    traces = sample_measurements(traj, net,
                                 {.sample_rate = sample_rate, .noise_sigma = 0.0});
    grid = GridSpec::cover(net.extent(), 40, 40);
  }
};

}  // namespace

TEST_CASE("replay frames: quiescence, count, expanding front") {
  LatticeRun run({.rows = 8, .cols = 8, .spacing = 100, .inertia_h = 4,
                  .damping_d = 1, .susceptance_b = 10, .voltage = 1},
                 {.bus = "b0", .delta_p = -0.3, .t_event = 0.5}, 2.0);

  std::vector<double> times{0.2, 0.62, 0.74, 0.86, 0.98};
  auto frames = replay_frames(run.traces, run.grid, times);
  REQUIRE(frames.size() == times.size());

  // Pre-event frame of a noiseless run is identically zero.
  for (double v : frames[0].values) CHECK(v == 0.0);

  // The region beyond the detection threshold only grows at early times.
  const double thr = 0.003;
  std::size_t prev = 0;
  for (std::size_t f = 1; f < frames.size(); ++f) {
    std::size_t count = 0;
    for (double v : frames[f].values) {
      if (std::abs(v) >= thr) ++count;
    }
    CHECK(count >= prev);
    prev = count;
  }
  CHECK(prev > 0);

  SUBCASE("frame time outside coverage") {
    std::vector<double> bad{5.0};
    try {
      replay_frames(run.traces, run.grid, bad);
      FAIL("expected TimeOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::time_out_of_range);
    }
  }
}

TEST_CASE("pearson correlation basics") {
  LatticeRun run({.rows = 6, .cols = 6, .spacing = 100, .inertia_h = 4,
                  .damping_d = 1, .susceptance_b = 10, .voltage = 1},
                 {.bus = "b0", .delta_p = -0.3, .t_event = 0.5}, 3.0);
  TdoaSamples samples = build_tdoa_samples(run.traces, run.net, run.dist, {});
  ScalarField tdoa = interpolate_field(samples, run.grid);
  SpeedField speed = speed_field(tdoa);

  SUBCASE("affine function of the speed field correlates perfectly") {
    ScalarField affine;
    affine.grid = speed.grid;
    affine.values.resize(speed.speed.size(), 0.0);
    affine.mask = speed.mask;
    for (std::size_t c = 0; c < speed.speed.size(); ++c) {
      if (speed.mask[c]) affine.values[c] = 0.001 * speed.speed[c] + 7.0;
    }
    CHECK(pearson_correlation(speed, affine) ==
          doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t c = 0; c < affine.values.size(); ++c) {
      affine.values[c] = -affine.values[c];
    }
    CHECK(pearson_correlation(speed, affine) ==
          doctest::Approx(-1.0).epsilon(1e-12));
  }

  SUBCASE("uniform penetration has no defined correlation") {
    // pv_fraction all zero -> constant raster -> zero variance
    try {
      penetration_speed_correlation(speed, run.net, run.grid);
      FAIL("expected ZeroVariance");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::zero_variance);
    }
  }

  SUBCASE("too few joint cells") {
    ScalarField tiny;
    tiny.grid = speed.grid;
    tiny.values.assign(speed.speed.size(), 1.0);
    tiny.mask.assign(speed.speed.size(), 0);
    for (int k = 0; k < 5; ++k) tiny.mask[k] = 1;
    try {
      pearson_correlation(speed, tiny);
      FAIL("expected InsufficientCells");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::insufficient_cells);
    }
  }
}

TEST_CASE("regional stats contracts") {
  SpeedField sp;
  sp.grid = GridSpec{.x_min = 0, .x_max = 3, .y_min = 0, .y_max = 3, .nx = 4, .ny = 4};
  sp.speed = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
  sp.mask.assign(16, 1);

  SUBCASE("one-cell region") {
    NamedRegion reg{"cell", std::vector<std::uint8_t>(16, 0)};
    reg.cell_mask[5] = 1;
    auto stats = regional_speed_stats(sp, {reg});
    CHECK(stats.at("cell").mean == 6.0);
    CHECK(stats.at("cell").median == 6.0);
    CHECK(stats.at("cell").n_cells == 1);
  }
  SUBCASE("full region equals global stats") {
    NamedRegion reg{"all", std::vector<std::uint8_t>(16, 1)};
    auto stats = regional_speed_stats(sp, {reg});
    RegionStats global = speed_stats(sp);
    CHECK(stats.at("all").mean == global.mean);
    CHECK(stats.at("all").median == global.median);
    CHECK(stats.at("all").p5 == global.p5);
    CHECK(stats.at("all").p95 == global.p95);
    CHECK(stats.at("all").median == doctest::Approx(8.5));
  }
  SUBCASE("empty region is an error") {
    NamedRegion reg{"void", std::vector<std::uint8_t>(16, 0)};
    try {
      regional_speed_stats(sp, {reg});
      FAIL("expected EmptyRegion");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::empty_region);
    }
  }
  SUBCASE("rect helper maps to cells") {
    auto mask = region_mask_from_rect(sp.grid, 0.0, 1.0, 2.0, 3.0);
    // columns 0..1, rows 2..3
    CHECK(mask[sp.grid.nx * 2 + 0] == 1);
    CHECK(mask[sp.grid.nx * 3 + 1] == 1);
    CHECK(mask[sp.grid.nx * 2 + 2] == 0);
    CHECK(mask[0] == 0);
  }
}

TEST_CASE("low-inertia quadrant shows faster measured speeds end to end") {
  LatticeParams p{.rows = 12, .cols = 12, .spacing = 100, .inertia_h = 4,
                  .damping_d = 1, .susceptance_b = 10, .voltage = 1};
  // Halve inertia in the north-west quadrant (low x, high y).
  p.inertia_regions.push_back({.x_min = -1, .x_max = 549, .y_min = 551,
                               .y_max = 1101, .h_multiplier = 0.5});
  // Trip far from the NW quadrant so the wave sweeps through everything.
  LatticeRun run(p, {.bus = "b11", .delta_p = -0.4, .t_event = 0.5}, 3.0);

  TdoaSamples samples = build_tdoa_samples(run.traces, run.net, run.dist, {});
  SpeedField speed = speed_field(interpolate_field(samples, run.grid));

  auto mid_x = 550.0, mid_y = 550.0;
  std::vector<NamedRegion> regions;
  regions.push_back({"nw", region_mask_from_rect(run.grid, 0, mid_x - 100, mid_y + 100, 1100)});
  regions.push_back({"ne", region_mask_from_rect(run.grid, mid_x + 100, 1100, mid_y + 100, 1100)});
  regions.push_back({"sw", region_mask_from_rect(run.grid, 0, mid_x - 100, 0, mid_y - 100)});
  regions.push_back({"se", region_mask_from_rect(run.grid, mid_x + 100, 1100, 0, mid_y - 100)});
  auto stats = regional_speed_stats(speed, regions);

  CHECK(stats.at("nw").median > stats.at("ne").median);
  CHECK(stats.at("nw").median > stats.at("sw").median);
  CHECK(stats.at("nw").median > stats.at("se").median);
}

TEST_CASE("quantile interpolates linearly") {
  std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile(v, 0.0) == 1.0);
  CHECK(quantile(v, 1.0) == 4.0);
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));
  CHECK(quantile(v, 0.25) == doctest::Approx(1.75));
}
