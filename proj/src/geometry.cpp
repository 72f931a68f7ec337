#include "bsar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsar {

double AcquisitionGeometry::direct_delay() const {
  return 2.0 * std::sqrt(alpha * alpha + h * h) / c0;
}

void AcquisitionGeometry::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("geometry: alpha must be > 0");
  if (!(h > 0.0)) throw std::invalid_argument("geometry: h must be > 0");
  if (!(c0 > 0.0)) throw std::invalid_argument("geometry: c0 must be > 0");
  if (!(s0 < s1)) throw std::invalid_argument("geometry: s window must satisfy s0 < s1");
  if (!(t0 < t1)) throw std::invalid_argument("geometry: t window must satisfy t0 < t1");
  if (!(mute_halfwidth >= 0.0))
    throw std::invalid_argument("geometry: mute_halfwidth must be >= 0");
  if (!(taper_fraction >= 0.0 && taper_fraction < 0.5))
    throw std::invalid_argument("geometry: taper_fraction must lie in [0, 0.5)");
}

GroundPoint IsoRangeEllipse::point_at(double angle) const {
  return {center.x1 + semi_axis_x1 * std::cos(angle),
          center.x2 + semi_axis_x2 * std::sin(angle)};
}

std::array<double, 3> transmitter_pos(const AcquisitionGeometry& geom, double s) {
  return {s + geom.alpha, 0.0, geom.h};
}

std::array<double, 3> receiver_pos(const AcquisitionGeometry& geom, double s) {
  return {s - geom.alpha, 0.0, geom.h};
}

BistaticRange bistatic_range(const AcquisitionGeometry& geom, double s, GroundPoint x) {
  const double d1 = x.x1 - s - geom.alpha;
  const double d2 = x.x1 - s + geom.alpha;
  const double q = x.x2 * x.x2 + geom.h * geom.h;
  return {std::sqrt(d1 * d1 + q), std::sqrt(d2 * d2 + q)};
}

RangeGradient range_gradient(const AcquisitionGeometry& geom, double s, GroundPoint x) {
  const auto r = bistatic_range(geom, s, x);
  const double d1 = x.x1 - s - geom.alpha;
  const double d2 = x.x1 - s + geom.alpha;
  RangeGradient g;
  g.dR_dx1 = d1 / r.X1 + d2 / r.X2;
  g.dR_dx2 = x.x2 / r.X1 + x.x2 / r.X2;
  g.dR_ds = -g.dR_dx1;
  return g;
}

ProlateCoords ground_to_prolate(const AcquisitionGeometry& geom, double s, GroundPoint x) {
  const double a = geom.alpha;
  const auto r = bistatic_range(geom, s, x);
  const double cosh_rho = std::max(1.0, (r.X1 + r.X2) / (2.0 * a));
  const double cos_theta = std::clamp((r.X2 - r.X1) / (2.0 * a), -1.0, 1.0);

  ProlateCoords p;
  p.rho = std::acosh(cosh_rho);
  p.theta = std::acos(cos_theta);

  // q = alpha * sinh(rho) * sin(theta): for ground inputs this equals
  // sqrt(x2^2 + h^2) up to rounding, hence q >= h always holds.
  const double q = a * std::sinh(p.rho) * std::sin(p.theta);
  const double eps = 1e-12 * a;
  if (q < geom.h - eps)
    throw std::domain_error("ground_to_prolate: no real azimuth branch for this point");

  const double qs = std::max(q, geom.h);
  const double sin_phi = std::max(-1.0, -geom.h / qs);
  const double cos_phi = x.x2 / qs;
  double phi = std::atan2(sin_phi, cos_phi);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  p.phi_angle = phi;
  p.degenerate = std::abs(x.x1 - s) <= eps && std::abs(x.x2) <= eps;
  return p;
}

std::array<double, 3> prolate_to_ground(const AcquisitionGeometry& geom, double s,
                                        const ProlateCoords& p) {
  const double a = geom.alpha;
  const double sr = std::sinh(p.rho) * std::sin(p.theta);
  return {s + a * std::cosh(p.rho) * std::cos(p.theta),
          a * sr * std::cos(p.phi_angle),
          geom.h + a * sr * std::sin(p.phi_angle)};
}

std::optional<IsoRangeEllipse> iso_range_ellipse(const AcquisitionGeometry& geom, double s,
                                                 double t) {
  if (!(t > 0.0)) throw std::invalid_argument("iso_range_ellipse: t must be > 0");
  const double a = geom.c0 * t / 2.0;
  const double b2 = a * a - geom.alpha * geom.alpha;
  const double h2 = geom.h * geom.h;
  if (b2 <= h2) return std::nullopt;
  const double B = std::sqrt(b2 - h2);
  const double A = a * B / std::sqrt(b2);
  return IsoRangeEllipse{{s, 0.0}, A, B};
}

}  // namespace bsar
