#include "bsar/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bsar/rng.hpp"

namespace bsar {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw std::invalid_argument(std::string(what) + ": values must be finite");
}

// Half the fast-time sampling rate, in angular frequency, divided by the
// required margin of 2.
double nyquist_budget(const SinogramGrid& g) { return kPi / (2.0 * g.t_step); }

void check_band(const Pulse& pulse, const SinogramGrid& g) {
  if (pulse.band_limit() > nyquist_budget(g))
    throw std::invalid_argument(
        "forward/adjoint: pulse band limit exceeds the fast-time sampling "
        "budget (margin 2)");
}

// Index range of fast-time samples within the pulse support around center.
struct Band {
  int lo = 0;
  int hi = -1;  // inclusive; empty when hi < lo
};

Band support_band(const SinogramGrid& g, double center, double halfwidth) {
  Band b;
  b.lo = std::max(0, static_cast<int>(std::ceil((center - halfwidth - g.t_start) /
                                                g.t_step)));
  b.hi = std::min(g.nt - 1, static_cast<int>(std::floor(
                                (center + halfwidth - g.t_start) / g.t_step)));
  return b;
}

double spreading(const BistaticRange& r) {
  return 1.0 / ((4.0 * kPi) * (4.0 * kPi) * r.X1 * r.X2);
}

// Cosine step from 0 at d <= 0 to 1 at d >= r.
double cosine_rise(double d, double r) {
  if (d <= 0.0) return 0.0;
  if (d >= r) return 1.0;
  return 0.5 * (1.0 - std::cos(kPi * d / r));
}

}  // namespace

void SceneGrid::validate() const {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("scene grid: dimensions must be >= 1");
  if (!(dx1 > 0.0) || !(dx2 > 0.0))
    throw std::invalid_argument("scene grid: spacing must be positive");
  if (!std::isfinite(origin_x1) || !std::isfinite(origin_x2))
    throw std::invalid_argument("scene grid: origin must be finite");
}

Scene Scene::zeros(const SceneGrid& grid) {
  grid.validate();
  Scene s;
  s.grid = grid;
  s.values.assign(static_cast<std::size_t>(grid.n1) * grid.n2, 0.0);
  return s;
}

void Scene::validate() const {
  grid.validate();
  if (values.size() != static_cast<std::size_t>(grid.n1) * grid.n2)
    throw std::invalid_argument("scene: value count does not match the grid");
  check_finite(values, "scene");
}

void SinogramGrid::validate() const {
  if (ns < 2 || nt < 2)
    throw std::invalid_argument("sinogram grid: needs at least 2x2 samples");
  if (!(s_step > 0.0) || !(t_step > 0.0))
    throw std::invalid_argument("sinogram grid: steps must be positive");
  if (!std::isfinite(s_start) || !std::isfinite(t_start))
    throw std::invalid_argument("sinogram grid: start values must be finite");
}

SinogramGrid SinogramGrid::over_windows(const AcquisitionGeometry& geom, int ns,
                                        int nt) {
  if (ns < 2 || nt < 2)
    throw std::invalid_argument("sinogram grid: needs at least 2x2 samples");
  SinogramGrid g;
  g.s_start = geom.s0;
  g.s_step = (geom.s1 - geom.s0) / (ns - 1);
  g.ns = ns;
  g.t_start = geom.t0;
  g.t_step = (geom.t1 - geom.t0) / (nt - 1);
  g.nt = nt;
  return g;
}

Sinogram Sinogram::zeros(const SinogramGrid& grid) {
  grid.validate();
  Sinogram d;
  d.grid = grid;
  d.values.assign(static_cast<std::size_t>(grid.ns) * grid.nt, 0.0);
  return d;
}

void Sinogram::validate() const {
  grid.validate();
  if (values.size() != static_cast<std::size_t>(grid.ns) * grid.nt)
    throw std::invalid_argument("sinogram: value count does not match the grid");
  check_finite(values, "sinogram");
}

double Pulse::eval(double tau) const {
  if (std::abs(tau) > support_halfwidth()) return 0.0;
  if (kind == PulseKind::ricker) {
    const double u = center_freq * tau;
    const double u2 = u * u;
    return (1.0 - 0.5 * u2) * std::exp(-0.25 * u2);
  }
  // Raised-cosine spectrum: P(tau) = cos(wc tau) S(tau) / pi with
  // S(tau) = b pi^2 sin(u) / (u (pi - u)(pi + u)), u = b tau; S is even and
  // has removable singularities at u = 0 and |u| = pi.
  const double b = bandwidth;
  const double u = std::abs(b * tau);
  double S;
  if (u < 1e-8) {
    S = b;
  } else {
    const double d = kPi - u;
    if (std::abs(d) < 1e-6) {
      const double sinc_d = std::abs(d) < 1e-8 ? 1.0 : std::sin(d) / d;
      S = b * kPi * kPi * sinc_d / (u * (kPi + u));
    } else {
      S = b * kPi * kPi * std::sin(u) / (u * d * (kPi + u));
    }
  }
  return std::cos(center_freq * tau) * S / kPi;
}

double Pulse::support_halfwidth() const {
  if (kind == PulseKind::ricker) return 13.0 / center_freq;
  // The envelope decays like pi / (b^2 |tau|^3); truncate where it falls
  // below 1e-16 of the peak value b / pi.
  return std::cbrt(kPi * kPi * 1e16 / (bandwidth * bandwidth * bandwidth));
}

double Pulse::band_limit() const {
  if (kind == PulseKind::ricker) return 3.0 * center_freq;
  return center_freq + bandwidth;
}

double Pulse::main_lobe_halfwidth() const {
  if (kind == PulseKind::ricker) return std::numbers::sqrt2 / center_freq;
  return kPi / (2.0 * center_freq);
}

void Pulse::validate() const {
  if (!(center_freq > 0.0))
    throw std::invalid_argument("pulse: center_freq must be > 0");
  if (kind == PulseKind::ricker) {
    if (bandwidth < 0.0)
      throw std::invalid_argument("pulse: bandwidth must be >= 0");
  } else {
    if (!(bandwidth > 0.0 && bandwidth <= center_freq))
      throw std::invalid_argument(
          "pulse: raised_cosine_band needs 0 < bandwidth <= center_freq");
  }
}

Taper Taper::from_geometry(const AcquisitionGeometry& geom) {
  Taper t;
  t.s0 = geom.s0;
  t.s1 = geom.s1;
  t.t0 = geom.t0;
  t.t1 = geom.t1;
  t.fraction = geom.taper_fraction;
  t.mute_center = geom.direct_delay();
  t.mute_halfwidth = geom.mute_halfwidth;
  return t;
}

double Taper::f(double s, double t) const {
  auto edge = [this](double z, double a, double b) {
    // Samples within a relative 1e-12 of a window edge count as boundary, so
    // endpoint grids stay exactly zero there even when accumulated steps land
    // a few ulps inside the window.
    const double d = std::min(z - a, b - z);
    if (d <= 1e-12 * (b - a)) return 0.0;
    const double r = fraction * (b - a);
    if (r == 0.0) return 1.0;
    return cosine_rise(d, r);
  };
  return edge(s, s0, s1) * edge(t, t0, t1);
}

double Taper::g(double t) const {
  const double m = mute_halfwidth;
  if (m == 0.0) return 1.0;
  const double u = std::abs(t - mute_center);
  if (u <= m) return 0.0;
  return cosine_rise(u - m, m);
}

Sinogram forward(const AcquisitionGeometry& geom, const Scene& scene,
                 const Pulse& pulse, const SinogramGrid& sino_grid) {
  geom.validate();
  scene.validate();
  sino_grid.validate();
  pulse.validate();
  check_band(pulse, sino_grid);

  const Taper taper = Taper::from_geometry(geom);
  const double halfwidth = pulse.support_halfwidth();
  const double cell_area = scene.grid.dx1 * scene.grid.dx2;
  Sinogram out = Sinogram::zeros(sino_grid);

  std::vector<KahanSum> row(static_cast<std::size_t>(sino_grid.nt));
  for (int i = 0; i < sino_grid.ns; ++i) {
    const double s = sino_grid.s_at(i);
    row.assign(row.size(), KahanSum{});
    for (int k = 0; k < scene.grid.n1; ++k) {
      for (int l = 0; l < scene.grid.n2; ++l) {
        const double v = scene.at(k, l);
        if (v == 0.0) continue;
        const auto r = bistatic_range(geom, s, scene.grid.cell_center(k, l));
        const double tc = r.total() / geom.c0;
        const double a0v = spreading(r) * v;
        const Band band = support_band(sino_grid, tc, halfwidth);
        for (int j = band.lo; j <= band.hi; ++j)
          row[static_cast<std::size_t>(j)].add(a0v *
                                               pulse.eval(sino_grid.t_at(j) - tc));
      }
    }
    for (int j = 0; j < sino_grid.nt; ++j)
      out.at(i, j) = taper.weight(s, sino_grid.t_at(j)) * cell_area *
                     row[static_cast<std::size_t>(j)].value();
  }
  return out;
}

Scene adjoint(const AcquisitionGeometry& geom, const Sinogram& sinogram,
              const Pulse& pulse, const SceneGrid& scene_grid) {
  geom.validate();
  sinogram.validate();
  scene_grid.validate();
  pulse.validate();
  check_band(pulse, sinogram.grid);

  const SinogramGrid& sg = sinogram.grid;
  const Taper taper = Taper::from_geometry(geom);
  const double halfwidth = pulse.support_halfwidth();
  std::vector<KahanSum> acc(static_cast<std::size_t>(scene_grid.n1) * scene_grid.n2);
  std::vector<double> weighted(static_cast<std::size_t>(sg.nt));

  for (int i = 0; i < sg.ns; ++i) {
    const double s = sg.s_at(i);
    for (int j = 0; j < sg.nt; ++j)
      weighted[static_cast<std::size_t>(j)] =
          taper.weight(s, sg.t_at(j)) * sinogram.at(i, j);
    for (int k = 0; k < scene_grid.n1; ++k) {
      for (int l = 0; l < scene_grid.n2; ++l) {
        const auto r = bistatic_range(geom, s, scene_grid.cell_center(k, l));
        const double tc = r.total() / geom.c0;
        const double a0 = spreading(r);
        const Band band = support_band(sg, tc, halfwidth);
        KahanSum& cell = acc[static_cast<std::size_t>(k) * scene_grid.n2 + l];
        for (int j = band.lo; j <= band.hi; ++j)
          cell.add(a0 * pulse.eval(sg.t_at(j) - tc) *
                   weighted[static_cast<std::size_t>(j)]);
      }
    }
  }

  Scene out = Scene::zeros(scene_grid);
  const double quad = sg.s_step * sg.t_step;
  for (std::size_t n = 0; n < acc.size(); ++n) out.values[n] = quad * acc[n].value();
  return out;
}

Scene normal_image(const AcquisitionGeometry& geom, const Scene& scene,
                   const Pulse& pulse, const SinogramGrid& sino_grid) {
  return adjoint(geom, forward(geom, scene, pulse, sino_grid), pulse, scene.grid);
}

double dot_product_test(const AcquisitionGeometry& geom, const SceneGrid& scene_grid,
                        const SinogramGrid& sino_grid, const Pulse& pulse,
                        std::uint64_t seed) {
  Rng rng(seed);
  Scene v = Scene::zeros(scene_grid);
  for (double& x : v.values) x = rng.uniform(-1.0, 1.0);
  Sinogram d = Sinogram::zeros(sino_grid);
  for (double& x : d.values) x = rng.uniform(-1.0, 1.0);

  const Sinogram fv = forward(geom, v, pulse, sino_grid);
  const Scene fstar_d = adjoint(geom, d, pulse, scene_grid);

  KahanSum lhs;
  for (std::size_t n = 0; n < fv.values.size(); ++n)
    lhs.add(fv.values[n] * d.values[n]);
  KahanSum rhs;
  for (std::size_t n = 0; n < v.values.size(); ++n)
    rhs.add(v.values[n] * fstar_d.values[n]);

  const double a = sino_grid.s_step * sino_grid.t_step * lhs.value();
  const double b = scene_grid.dx1 * scene_grid.dx2 * rhs.value();
  return std::abs(a - b) / (std::abs(a) + 1e-30);
}

ArtifactDemo artifact_demo(const AcquisitionGeometry& geom, GroundPoint target,
                           const Pulse& pulse, const SceneGrid& scene_grid,
                           const SinogramGrid& sino_grid) {
  geom.validate();
  scene_grid.validate();
  sino_grid.validate();
  pulse.validate();

  if (target.x2 == 0.0)
    throw std::invalid_argument("artifact_demo: target must sit off the track");

  // Both the target cell and its reflection must fit inside the grid with a
  // margin of one resolution length, so the peaks are not clipped.
  const double margin = geom.c0 * pulse.main_lobe_halfwidth();
  const double lo1 = scene_grid.origin_x1 + margin;
  const double hi1 = scene_grid.origin_x1 + scene_grid.n1 * scene_grid.dx1 - margin;
  const double lo2 = scene_grid.origin_x2 + margin;
  const double hi2 = scene_grid.origin_x2 + scene_grid.n2 * scene_grid.dx2 - margin;
  const GroundPoint mirror{target.x1, -target.x2};
  for (const GroundPoint& p : {target, mirror})
    if (p.x1 < lo1 || p.x1 > hi1 || p.x2 < lo2 || p.x2 > hi2)
      throw std::invalid_argument(
          "artifact_demo: target or its reflection too close to the grid edge");

  // The target's arrival time must clear the muted direct-path band over the
  // whole slow-time window.
  double min_arrival = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sino_grid.ns; ++i)
    min_arrival = std::min(min_arrival,
                           bistatic_range(geom, sino_grid.s_at(i), target).total() /
                               geom.c0);
  if (min_arrival <= geom.direct_delay() + 2.0 * geom.mute_halfwidth)
    throw std::invalid_argument(
        "artifact_demo: target arrival falls inside the muted band");

  // Unit scatterer at the cell nearest the target.
  const int ti = std::clamp(
      static_cast<int>(std::floor((target.x1 - scene_grid.origin_x1) / scene_grid.dx1)),
      0, scene_grid.n1 - 1);
  const int tj = std::clamp(
      static_cast<int>(std::floor((target.x2 - scene_grid.origin_x2) / scene_grid.dx2)),
      0, scene_grid.n2 - 1);
  Scene scene = Scene::zeros(scene_grid);
  scene.at(ti, tj) = 1.0;

  ArtifactDemo demo;
  demo.image = normal_image(geom, scene, pulse, sino_grid);

  auto argmax = [&](int skip_i, int skip_j, int halo) {
    int bi = -1, bj = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < scene_grid.n1; ++i) {
      for (int j = 0; j < scene_grid.n2; ++j) {
        if (std::abs(i - skip_i) <= halo && std::abs(j - skip_j) <= halo) continue;
        const double v = demo.image.at(i, j);
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    return std::tuple<int, int, double>{bi, bj, best};
  };

  const int halo = std::max(4, std::min(scene_grid.n1, scene_grid.n2) / 8);
  const auto [pi1, pj1, v1] = argmax(-halo - 1, -halo - 1, halo);
  const auto [pi2, pj2, v2] = argmax(pi1, pj1, halo);
  if (pi2 < 0 || v2 < 0.1 * v1)
    throw std::runtime_error(
        "artifact_demo: secondary peak below the noise floor");

  const GroundPoint peak1 = scene_grid.cell_center(pi1, pj1);
  const GroundPoint peak2 = scene_grid.cell_center(pi2, pj2);
  auto within_cell = [&](const GroundPoint& p, const GroundPoint& q) {
    return std::abs(p.x1 - q.x1) <= scene_grid.dx1 &&
           std::abs(p.x2 - q.x2) <= scene_grid.dx2;
  };
  const bool straight =
      within_cell(peak1, target) && within_cell(peak2, mirror);
  const bool swapped = within_cell(peak1, mirror) && within_cell(peak2, target);
  if (!straight && !swapped)
    throw std::runtime_error(
        "artifact_demo: peaks do not bracket the target and its reflection");

  if (straight) {
    demo.true_peak = peak1;
    demo.true_value = v1;
    demo.mirror_peak = peak2;
    demo.mirror_value = v2;
  } else {
    demo.true_peak = peak2;
    demo.true_value = v2;
    demo.mirror_peak = peak1;
    demo.mirror_value = v1;
  }
  demo.peak_ratio = demo.mirror_value / demo.true_value;
  return demo;
}

}  // namespace bsar
