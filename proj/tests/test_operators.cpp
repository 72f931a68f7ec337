#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bsar/operators.hpp"
#include "bsar/rng.hpp"
#include "doctest.h"

using namespace bsar;

namespace {

AcquisitionGeometry default_geometry() {
  AcquisitionGeometry g;
  g.alpha = 1.0;
  g.h = 1.0;
  g.c0 = 1.0;
  g.s0 = -2.0;
  g.s1 = 2.0;
  g.t0 = 2.0;
  g.t1 = 9.0;
  g.mute_halfwidth = 0.1;
  g.taper_fraction = 0.1;
  return g;
}

SceneGrid square_grid(int n) {
  SceneGrid grid;
  grid.origin_x1 = -1.5;
  grid.origin_x2 = -1.5;
  grid.dx1 = 3.0 / n;
  grid.dx2 = 3.0 / n;
  grid.n1 = n;
  grid.n2 = n;
  return grid;
}

Pulse ricker8() {
  Pulse p;
  p.kind = PulseKind::ricker;
  p.center_freq = 8.0;
  return p;
}

}  // namespace

TEST_CASE("scene grid centers cells and validates") {
  const auto grid = square_grid(16);
  CHECK(grid.center_x1(0) == doctest::Approx(-1.5 + 0.5 * 3.0 / 16).epsilon(1e-15));
  CHECK(grid.center_x2(15) == doctest::Approx(1.5 - 0.5 * 3.0 / 16).epsilon(1e-15));
  // Symmetric grid: centers mirror exactly across zero.
  for (int j = 0; j < 16; ++j)
    CHECK(grid.center_x2(j) == -grid.center_x2(15 - j));

  SceneGrid bad = grid;
  bad.n1 = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = grid;
  bad.dx2 = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  Scene s = Scene::zeros(grid);
  CHECK(s.values.size() == 256);
  s.values.pop_back();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = Scene::zeros(grid);
  s.at(3, 4) = std::nan("");
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("sinogram grid spans the acquisition windows endpoint to endpoint") {
  const auto g = default_geometry();
  const auto grid = SinogramGrid::over_windows(g, 64, 128);
  CHECK(grid.s_at(0) == g.s0);
  CHECK(grid.s_at(63) == doctest::Approx(g.s1).epsilon(1e-14));
  CHECK(grid.t_at(0) == g.t0);
  CHECK(grid.t_at(127) == doctest::Approx(g.t1).epsilon(1e-14));
  CHECK_THROWS_AS((void)SinogramGrid::over_windows(g, 1, 128), std::invalid_argument);

  SinogramGrid bad = grid;
  bad.t_step = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("second-derivative-of-Gaussian pulse") {
  const auto p = ricker8();
  CHECK(p.eval(0.0) == 1.0);
  CHECK(p.band_limit() == 24.0);
  CHECK(p.main_lobe_halfwidth() == doctest::Approx(std::numbers::sqrt2 / 8.0).epsilon(1e-15));
  // Zero crossing at the edge of the main lobe.
  CHECK(std::abs(p.eval(p.main_lobe_halfwidth())) <= 1e-15);
  // Even function.
  CHECK(p.eval(0.07) == p.eval(-0.07));
  // Exactly zero beyond the support radius, and already negligible just inside.
  CHECK(p.eval(p.support_halfwidth() * 1.000001) == 0.0);
  CHECK(std::abs(p.eval(p.support_halfwidth() * 0.999999)) <= 1e-16);

  Pulse bad = p;
  bad.center_freq = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("band-limited pulse with raised-cosine spectrum") {
  Pulse p;
  p.kind = PulseKind::raised_cosine_band;
  p.center_freq = 8.0;
  p.bandwidth = 4.0;
  CHECK(p.band_limit() == 12.0);
  CHECK(p.main_lobe_halfwidth() ==
        doctest::Approx(std::numbers::pi / 16.0).epsilon(1e-15));

  // Value at zero lag and continuity across the small-argument guard.
  const double peak = p.bandwidth / std::numbers::pi;
  CHECK(p.eval(0.0) == doctest::Approx(peak).epsilon(1e-12));
  const double eps = 1e-8 / p.bandwidth;
  CHECK(std::abs(p.eval(1.0000001 * eps) - p.eval(0.9999999 * eps)) <= 1e-9 * peak);

  // Removable singularity of the spectrum factor at u = pi.
  const double tau = std::numbers::pi / p.bandwidth;
  const double expected = std::cos(p.center_freq * tau) * 0.5 * p.bandwidth /
                          std::numbers::pi;
  CHECK(p.eval(tau) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(p.eval(1.0001 * p.support_halfwidth()) == 0.0);

  Pulse bad = p;
  bad.bandwidth = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.bandwidth = 9.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("window rolloff vanishes at the boundary and saturates inside") {
  const auto g = default_geometry();
  const Taper taper = Taper::from_geometry(g);
  // Exactly zero on every window edge, including samples a hair inside.
  CHECK(taper.f(g.s0, 5.0) == 0.0);
  CHECK(taper.f(g.s1, 5.0) == 0.0);
  CHECK(taper.f(0.0, g.t0) == 0.0);
  CHECK(taper.f(0.0, g.t1) == 0.0);
  CHECK(taper.f(g.s0 + 1e-13 * (g.s1 - g.s0), 5.0) == 0.0);
  // Unity deep inside, half way up at half the rolloff width.
  CHECK(taper.f(0.0, 5.5) == 1.0);
  const double rise_s = g.s0 + 0.5 * g.taper_fraction * (g.s1 - g.s0);
  CHECK(taper.f(rise_s, 5.5) == doctest::Approx(0.5).epsilon(1e-12));

  // Zero rolloff fraction keeps the interior weight exactly one.
  AcquisitionGeometry flat = g;
  flat.taper_fraction = 0.0;
  const Taper open = Taper::from_geometry(flat);
  CHECK(open.f(-1.999, 2.001) == 1.0);

  // Notch around the shortest echo delay.
  const double c = g.direct_delay();
  CHECK(taper.g(c) == 0.0);
  CHECK(taper.g(c + 0.09) == 0.0);
  CHECK(taper.g(c - 0.09) == 0.0);
  CHECK(taper.g(c + 0.15) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(taper.g(c + 0.3) == 1.0);
  AcquisitionGeometry unmuted = g;
  unmuted.mute_halfwidth = 0.0;
  CHECK(Taper::from_geometry(unmuted).g(c) == 1.0);
}

TEST_CASE("forward of the zero scene is the zero sinogram") {
  const auto g = default_geometry();
  const auto sino_grid = SinogramGrid::over_windows(g, 16, 128);
  const auto out = forward(g, Scene::zeros(square_grid(8)), ricker8(), sino_grid);
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("forward rejects a pulse sampled below its band") {
  const auto g = default_geometry();
  // nt = 16 over a 7-unit window is far below what a 24 rad/s band needs.
  const auto sino_grid = SinogramGrid::over_windows(g, 16, 16);
  Scene scene = Scene::zeros(square_grid(8));
  CHECK_THROWS_AS((void)forward(g, scene, ricker8(), sino_grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      (void)adjoint(g, Sinogram::zeros(sino_grid), ricker8(), square_grid(8)),
      std::invalid_argument);
}

TEST_CASE("forward is linear") {
  const auto g = default_geometry();
  const auto grid = square_grid(8);
  const auto sino_grid = SinogramGrid::over_windows(g, 12, 128);
  const auto pulse = ricker8();
  Rng rng(4);
  Scene a = Scene::zeros(grid);
  Scene b = Scene::zeros(grid);
  for (double& v : a.values) v = rng.uniform(-1.0, 1.0);
  for (double& v : b.values) v = rng.uniform(-1.0, 1.0);
  Scene combo = Scene::zeros(grid);
  for (std::size_t n = 0; n < combo.values.size(); ++n)
    combo.values[n] = 2.0 * a.values[n] - 3.0 * b.values[n];

  const auto fa = forward(g, a, pulse, sino_grid);
  const auto fb = forward(g, b, pulse, sino_grid);
  const auto fc = forward(g, combo, pulse, sino_grid);
  double scale = 0.0;
  for (double v : fc.values) scale = std::max(scale, std::abs(v));
  for (std::size_t n = 0; n < fc.values.size(); ++n) {
    const double expected = 2.0 * fa.values[n] - 3.0 * fb.values[n];
    CHECK(std::abs(fc.values[n] - expected) <= 1e-13 * scale);
  }
}

TEST_CASE("echo energy stays inside the pulse support around the travel time") {
  const auto g = default_geometry();
  const auto grid = square_grid(16);
  const auto sino_grid = SinogramGrid::over_windows(g, 24, 128);
  const auto pulse = ricker8();

  Scene scene = Scene::zeros(grid);
  scene.at(12, 13) = 1.0;  // a single off-track scatterer
  const GroundPoint x = grid.cell_center(12, 13);
  const auto out = forward(g, scene, pulse, sino_grid);

  const Taper taper = Taper::from_geometry(g);
  for (int i = 0; i < sino_grid.ns; ++i) {
    const double s = sino_grid.s_at(i);
    const double tc = bistatic_range(g, s, x).total() / g.c0;
    int best = -1;
    double best_mag = 0.0;
    for (int j = 0; j < sino_grid.nt; ++j) {
      const double t = sino_grid.t_at(j);
      const double v = out.at(i, j);
      if (std::abs(t - tc) > pulse.support_halfwidth()) CHECK(v == 0.0);
      if (std::abs(v) > best_mag) {
        best_mag = std::abs(v);
        best = j;
      }
    }
    // Where the window weight is healthy, the strongest sample sits within
    // one fast-time step of the travel time.
    if (taper.weight(s, tc) > 0.5 && tc > sino_grid.t_at(1) &&
        tc < sino_grid.t_at(sino_grid.nt - 2)) {
      REQUIRE(best >= 0);
      CHECK(std::abs(sino_grid.t_at(best) - tc) <= sino_grid.t_step);
    }
  }
}

TEST_CASE("data vanish on the window frame and across the muted band") {
  const auto g = default_geometry();
  const auto grid = square_grid(8);
  const auto sino_grid = SinogramGrid::over_windows(g, 24, 128);
  Scene scene = Scene::zeros(grid);
  for (double& v : scene.values) v = 1.0;

  const auto out = forward(g, scene, ricker8(), sino_grid);
  for (int j = 0; j < sino_grid.nt; ++j) {
    CHECK(out.at(0, j) == 0.0);
    CHECK(out.at(sino_grid.ns - 1, j) == 0.0);
  }
  const double c = g.direct_delay();
  for (int i = 0; i < sino_grid.ns; ++i) {
    CHECK(out.at(i, 0) == 0.0);
    CHECK(out.at(i, sino_grid.nt - 1) == 0.0);
    for (int j = 0; j < sino_grid.nt; ++j)
      if (std::abs(sino_grid.t_at(j) - c) <= g.mute_halfwidth)
        CHECK(out.at(i, j) == 0.0);
  }
  // And the interior is not trivially zero.
  double peak = 0.0;
  for (double v : out.values) peak = std::max(peak, std::abs(v));
  CHECK(peak > 0.0);
}

TEST_CASE("reflecting the scene across the track reflects nothing in the data") {
  const auto g = default_geometry();
  const auto grid = square_grid(16);
  const auto sino_grid = SinogramGrid::over_windows(g, 16, 128);
  const auto pulse = ricker8();
  Rng rng(10);
  Scene scene = Scene::zeros(grid);
  for (double& v : scene.values) v = rng.uniform(-1.0, 1.0);
  Scene mirrored = Scene::zeros(grid);
  for (int i = 0; i < grid.n1; ++i)
    for (int j = 0; j < grid.n2; ++j) mirrored.at(i, j) = scene.at(i, grid.n2 - 1 - j);

  const auto fa = forward(g, scene, pulse, sino_grid);
  const auto fb = forward(g, mirrored, pulse, sino_grid);
  double scale = 0.0;
  for (double v : fa.values) scale = std::max(scale, std::abs(v));
  for (std::size_t n = 0; n < fa.values.size(); ++n)
    CHECK(std::abs(fa.values[n] - fb.values[n]) <= 1e-12 * scale);
}

TEST_CASE("adjoint of the zero sinogram is the zero scene") {
  const auto g = default_geometry();
  const auto sino_grid = SinogramGrid::over_windows(g, 16, 128);
  const auto out = adjoint(g, Sinogram::zeros(sino_grid), ricker8(), square_grid(8));
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("transpose pairing holds to rounding for both pulse kinds") {
  const auto g = default_geometry();
  const auto grid = square_grid(16);
  const auto sino_grid = SinogramGrid::over_windows(g, 16, 128);
  CHECK(dot_product_test(g, grid, sino_grid, ricker8(), 101) <= 1e-12);
  CHECK(dot_product_test(g, grid, sino_grid, ricker8(), 102) <= 1e-12);

  Pulse rc;
  rc.kind = PulseKind::raised_cosine_band;
  rc.center_freq = 8.0;
  rc.bandwidth = 4.0;
  CHECK(dot_product_test(g, square_grid(8), SinogramGrid::over_windows(g, 8, 128), rc,
                         103) <= 1e-12);
}

TEST_CASE("repeated application is bit-reproducible") {
  const auto g = default_geometry();
  const auto grid = square_grid(8);
  const auto sino_grid = SinogramGrid::over_windows(g, 12, 128);
  Rng rng(11);
  Scene scene = Scene::zeros(grid);
  for (double& v : scene.values) v = rng.uniform(-1.0, 1.0);
  const auto once = forward(g, scene, ricker8(), sino_grid);
  const auto twice = forward(g, scene, ricker8(), sino_grid);
  for (std::size_t n = 0; n < once.values.size(); ++n)
    CHECK(once.values[n] == twice.values[n]);
}

TEST_CASE("point scatterer images as itself plus an equal mirror ghost") {
  const auto g = default_geometry();
  const auto grid = square_grid(64);
  const auto sino_grid = SinogramGrid::over_windows(g, 64, 128);
  const GroundPoint target{0.5, 1.0};

  const auto demo = artifact_demo(g, target, ricker8(), grid, sino_grid);
  CHECK(std::abs(demo.true_peak.x1 - target.x1) <= grid.dx1);
  CHECK(std::abs(demo.true_peak.x2 - target.x2) <= grid.dx2);
  CHECK(std::abs(demo.mirror_peak.x1 - target.x1) <= grid.dx1);
  CHECK(std::abs(demo.mirror_peak.x2 + target.x2) <= grid.dx2);
  CHECK(demo.true_value > 0.0);
  // The two-leg travel time is even in x2, so the ghost reproduces the true
  // peak exactly on a grid that mirrors onto itself.
  CHECK(std::abs(demo.peak_ratio - 1.0) <= 1e-12);
  // The image itself is mirror symmetric cell by cell.
  for (int i = 0; i < grid.n1; i += 7)
    for (int j = 0; j < grid.n2; ++j)
      CHECK(demo.image.at(i, j) == demo.image.at(i, grid.n2 - 1 - j));
}

TEST_CASE("artifact demo rejects ill-posed targets") {
  const auto g = default_geometry();
  const auto grid = square_grid(32);
  const auto sino_grid = SinogramGrid::over_windows(g, 32, 128);
  const auto pulse = ricker8();
  // On the track: the mirror coincides with the target.
  CHECK_THROWS_AS((void)artifact_demo(g, {0.5, 0.0}, pulse, grid, sino_grid),
                  std::invalid_argument);
  // Too close to the grid edge for the resolution margin.
  CHECK_THROWS_AS((void)artifact_demo(g, {0.5, 1.49}, pulse, grid, sino_grid),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)artifact_demo(g, {-1.49, 1.0}, pulse, grid, sino_grid),
                  std::invalid_argument);
  // A wide mute swallows the target's whole arrival band.
  AcquisitionGeometry muted = g;
  muted.mute_halfwidth = 2.0;
  CHECK_THROWS_AS(
      (void)artifact_demo(muted, {0.5, 1.0}, pulse, grid,
                          SinogramGrid::over_windows(muted, 32, 128)),
      std::invalid_argument);
}
