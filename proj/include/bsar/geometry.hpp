// Flight geometry for a fixed-offset bistatic acquisition. The transmitter
// and receiver move along the line {x2 = 0, x3 = h} with constant
// along-track offsets +alpha and -alpha from a common reference position;
// scatterers live on the ground plane x3 = 0. Level sets of the two-leg
// travel distance are confocal ellipses on the ground, which is why the
// prolate spheroidal chart below diagonalizes most of the later algebra.
#pragma once

#include <array>
#include <optional>

namespace bsar {

/// Global acquisition parameters shared by every module.
struct AcquisitionGeometry {
  double alpha = 1.0;  ///< half separation between transmitter and receiver, > 0
  double h = 1.0;      ///< platform height above the ground plane, > 0
  double c0 = 1.0;     ///< wave speed, > 0
  double s0 = -2.0;    ///< slow-time window start
  double s1 = 2.0;     ///< slow-time window end, > s0
  double t0 = 2.0;     ///< fast-time window start
  double t1 = 9.0;     ///< fast-time window end, > t0
  double mute_halfwidth = 0.0;   ///< half-width of the data mute centered at direct_delay(), >= 0
  double taper_fraction = 0.0;   ///< fraction of each window edge used by the cosine rolloff, in [0, 0.5)

  /// Shortest possible echo delay, 2*sqrt(alpha^2 + h^2)/c0, reached only by
  /// the ground point directly below the platform midpoint.
  double direct_delay() const;

  /// Throws std::invalid_argument if any field violates its constraint.
  void validate() const;
};

/// Point on the ground plane x3 = 0.
struct GroundPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// Confocal prolate spheroidal coordinates with foci at the transmitter and
/// receiver positions. rho >= 0 is the radial coordinate, theta in [0, pi]
/// the polar angle, phi_angle in [0, 2*pi) the azimuth about the flight
/// line. Ground points map to the branch with sin(phi_angle) = -h / (alpha
/// sinh(rho) sin(theta)) and sign(cos(phi_angle)) = sign(x2).
struct ProlateCoords {
  double rho = 0.0;
  double theta = 0.0;
  double phi_angle = 0.0;
  /// Set when the source point sits directly under the platform midpoint,
  /// where |sin(phi_angle)| = 1 and the azimuth branch collapses.
  bool degenerate = false;
};

/// The two legs of the travel path from transmitter to scatterer to
/// receiver. Both legs are bounded below by h, so they never vanish.
struct BistaticRange {
  double X1 = 0.0;  ///< |x - transmitter|
  double X2 = 0.0;  ///< |x - receiver|
  double total() const { return X1 + X2; }
};

/// Closed-form partial derivatives of the two-leg range R(s, x).
struct RangeGradient {
  double dR_ds = 0.0;
  double dR_dx1 = 0.0;  ///< equals -dR_ds identically
  double dR_dx2 = 0.0;
};

/// Ground ellipse {x : R(s, x) = c0 * t}, centered on the track at (s, 0)
/// with axes aligned to the coordinate axes.
struct IsoRangeEllipse {
  GroundPoint center;
  double semi_axis_x1 = 0.0;
  double semi_axis_x2 = 0.0;
  /// Parametric sample center + (a*cos(angle), b*sin(angle)).
  GroundPoint point_at(double angle) const;
};

/// Transmitter position (s + alpha, 0, h) at slow time s.
std::array<double, 3> transmitter_pos(const AcquisitionGeometry& geom, double s);

/// Receiver position (s - alpha, 0, h) at slow time s.
std::array<double, 3> receiver_pos(const AcquisitionGeometry& geom, double s);

/// Two-leg range split for ground point x at slow time s.
BistaticRange bistatic_range(const AcquisitionGeometry& geom, double s, GroundPoint x);

/// Closed-form partials of the total range. dR_ds + dR_dx1 == 0 identically
/// (translating scene and platforms together leaves the range unchanged).
RangeGradient range_gradient(const AcquisitionGeometry& geom, double s, GroundPoint x);

/// Inverts the prolate chart for a ground point. Throws std::domain_error
/// when the azimuth is not real (possible only for off-ground inputs).
/// Points within 1e-12 * alpha of (s, 0) return the phi_angle = 3*pi/2
/// branch with the degenerate flag set.
ProlateCoords ground_to_prolate(const AcquisitionGeometry& geom, double s, GroundPoint x);

/// Evaluates the prolate chart. General 3-space output; ground points come
/// back as (x1, x2, 0) up to rounding.
std::array<double, 3> prolate_to_ground(const AcquisitionGeometry& geom, double s,
                                        const ProlateCoords& p);

/// Ground intersection of the constant-range spheroid R = c0 * t. Empty when
/// the spheroid does not reach the ground, i.e. c0*t <= 2*sqrt(alpha^2+h^2)
/// at the level of the computed semi-axes. Requires t > 0.
std::optional<IsoRangeEllipse> iso_range_ellipse(const AcquisitionGeometry& geom, double s,
                                                 double t);

}  // namespace bsar
