// Discrete forward scattering map, its exact transpose, and the normal map
// built from the two.  The forward map integrates a reflectivity scene
// against a time-domain pulse delayed by the two-leg travel time and weighted
// by geometric spreading; the adjoint is the exact transpose of that linear
// map with respect to the quadrature-weighted inner products, which the
// dot-product test checks to near machine precision.  The artifact demo
// images a point scatterer through the normal map and measures the mirror
// ghost that the geometry predicts at the reflection of the scatterer across
// the flight track.
#pragma once

#include <cstdint>
#include <vector>

#include "bsar/geometry.hpp"

namespace bsar {

/// Cell-centered rectangular grid: cell (i, j) is centered at
/// (origin_x1 + (i + 1/2) dx1, origin_x2 + (j + 1/2) dx2).
struct SceneGrid {
  double origin_x1 = 0.0;
  double origin_x2 = 0.0;
  double dx1 = 1.0;
  double dx2 = 1.0;
  int n1 = 0;
  int n2 = 0;

  double center_x1(int i) const { return origin_x1 + (i + 0.5) * dx1; }
  double center_x2(int j) const { return origin_x2 + (j + 0.5) * dx2; }
  GroundPoint cell_center(int i, int j) const { return {center_x1(i), center_x2(j)}; }
  void validate() const;
};

/// Reflectivity samples on a SceneGrid, stored row-major as values[i*n2 + j].
struct Scene {
  SceneGrid grid;
  std::vector<double> values;

  static Scene zeros(const SceneGrid& grid);
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.n2 + j]; }
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * grid.n2 + j];
  }
  void validate() const;
};

/// Uniform endpoint-inclusive sampling of the slow-time and fast-time
/// windows.
struct SinogramGrid {
  double s_start = 0.0;
  double s_step = 1.0;
  int ns = 0;
  double t_start = 0.0;
  double t_step = 1.0;
  int nt = 0;

  double s_at(int i) const { return s_start + i * s_step; }
  double t_at(int j) const { return t_start + j * t_step; }
  void validate() const;

  /// Grid whose first/last samples land exactly on the window boundaries.
  static SinogramGrid over_windows(const AcquisitionGeometry& geom, int ns, int nt);
};

/// Data samples on a SinogramGrid, stored row-major as values[i*nt + j].
struct Sinogram {
  SinogramGrid grid;
  std::vector<double> values;

  static Sinogram zeros(const SinogramGrid& grid);
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.nt + j]; }
  double at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * grid.nt + j];
  }
  void validate() const;
};

enum class PulseKind { ricker, raised_cosine_band };

/// Time-domain pulse with compact numerical support and a known band limit.
/// The ricker kind is the second derivative of a Gaussian, matching the
/// omega^2 weight that scattering puts on the spectrum; the
/// raised_cosine_band kind has a raised-cosine spectrum on
/// [center_freq - bandwidth, center_freq + bandwidth].
struct Pulse {
  PulseKind kind = PulseKind::ricker;
  double center_freq = 8.0;
  double bandwidth = 0.0;

  /// Pulse amplitude at lag tau; exactly zero beyond support_halfwidth().
  double eval(double tau) const;
  /// Truncation radius: evaluations beyond it are exactly zero and below
  /// 1e-16 of the peak.
  double support_halfwidth() const;
  /// Largest angular frequency carrying non-negligible spectrum.
  double band_limit() const;
  /// Half-width of the central lobe, the resolution scale of the pulse.
  double main_lobe_halfwidth() const;
  void validate() const;
};

/// Multiplicative data weights: a separable cosine rolloff `f` that vanishes
/// at the acquisition-window boundaries and a smooth notch `g` that vanishes
/// on the direct-path arrival time band.
struct Taper {
  double s0 = 0.0;
  double s1 = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;
  double fraction = 0.0;
  double mute_center = 0.0;
  double mute_halfwidth = 0.0;

  static Taper from_geometry(const AcquisitionGeometry& geom);
  double f(double s, double t) const;
  double g(double t) const;
  double weight(double s, double t) const { return f(s, t) * g(t); }
};

/// Applies the forward map: d(s,t) = f g Sum_cells dx1 dx2 A0 P(t - R/c0) V
/// with A0 = ((4 pi)^2 X1 X2)^{-1}.  Accumulation order is fixed
/// (cells row-major, compensated per output sample), so results are
/// bit-reproducible.  Throws std::invalid_argument when the pulse band limit
/// exceeds half the fast-time Nyquist frequency or grids are invalid.
Sinogram forward(const AcquisitionGeometry& geom, const Scene& scene,
                 const Pulse& pulse, const SinogramGrid& sino_grid);

/// Applies the exact transpose of `forward` with respect to the
/// quadrature-weighted inner products:
/// V*(x) = Sum_{s,t} ds dt f g A0 P(t - R/c0) d(s,t).
Scene adjoint(const AcquisitionGeometry& geom, const Sinogram& sinogram,
              const Pulse& pulse, const SceneGrid& scene_grid);

/// adjoint(forward(scene)) evaluated on the scene's own grid.
Scene normal_image(const AcquisitionGeometry& geom, const Scene& scene,
                   const Pulse& pulse, const SinogramGrid& sino_grid);

/// Draws a random scene and sinogram and returns
/// |<FV, d> - <V, F*d>| / (|<FV, d>| + 1e-30), which the exact-transpose
/// construction keeps at rounding level.
double dot_product_test(const AcquisitionGeometry& geom, const SceneGrid& scene_grid,
                        const SinogramGrid& sino_grid, const Pulse& pulse,
                        std::uint64_t seed);

/// Result of imaging a point scatterer through the normal map.
struct ArtifactDemo {
  Scene image;
  GroundPoint true_peak;
  GroundPoint mirror_peak;
  double true_value = 0.0;
  double mirror_value = 0.0;
  /// mirror_value / true_value.
  double peak_ratio = 0.0;
};

/// Places a unit scatterer at the grid cell nearest `target`, images it
/// through the normal map, and locates the two dominant well-separated
/// maxima.  Verifies they fall within one grid cell of the target and of its
/// reflection across x2 = 0.  Throws std::invalid_argument when the target
/// sits on the track, inside the muted arrival band, or too close to the grid
/// edge; throws std::runtime_error when peak detection fails.
ArtifactDemo artifact_demo(const AcquisitionGeometry& geom, GroundPoint target,
                           const Pulse& pulse, const SceneGrid& scene_grid,
                           const SinogramGrid& sino_grid);

}  // namespace bsar
