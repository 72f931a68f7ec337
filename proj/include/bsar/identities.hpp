// Verification of the six algebraic identities that decompose the generators
// p~1..p~6 of the kernel-phase ideal into smooth multiples of d_s(phi) and
// d_omega(phi).  The coefficient functions are assembled in prolate
// spheroidal coordinates adapted to the two antennas; identity 1 also has an
// independent Cartesian closed form used for cross-validation.  Everything
// here is checked by evaluating both sides numerically at random pairs of
// ground points.
#pragma once

#include <utility>
#include <vector>

#include "bsar/geometry.hpp"
#include "bsar/rng.hpp"

namespace bsar {

/// A pair of ground points sharing one slow time and one frequency, with
/// their prolate conversions cached.  Valid instances are non-degenerate:
/// neither point sits at (s, 0) and omega is nonzero.
struct PairPoint {
  GroundPoint x;
  GroundPoint y;
  double s = 0.0;
  double omega = 1.0;
  ProlateCoords prolate_x;
  ProlateCoords prolate_y;
};

/// Both sides of one identity at one pair point, with the residuals and the
/// coefficient pair that was used (empty for identity 3, which has none).
struct IdentityResidual {
  int identity_index = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::vector<std::pair<double, double>> coefficients;
};

/// The two sides of the cos(theta) - cos(theta') decomposition.
struct CosThetaDifference {
  double direct = 0.0;
  double formula = 0.0;
};

/// Builds a PairPoint, caching the prolate conversions.  Throws
/// std::domain_error when either point is degenerate (at (s, 0)) and
/// std::invalid_argument when omega == 0.
PairPoint make_pair_point(const AcquisitionGeometry& geom, GroundPoint x,
                          GroundPoint y, double s, double omega);

/// Evaluates generator i of the ideal:
///   1: x1 - y1               2: x2^2 - y2^2        3: xi1 - eta1
///   4: (x2+y2)(xi2-eta2)     5: (x2-y2)(xi2+eta2)  6: xi2^2 - eta2^2
/// Throws std::invalid_argument for i outside 1..6.
double ptilde(const AcquisitionGeometry& geom, int i, const PairPoint& p);

/// Returns the smooth coefficients (f_i1, f_i2) such that
///   p~1 = (f_11/omega) d_s(phi) + f_12 d_omega(phi)
///   p~2 = (f_21/omega) d_s(phi) + f_22 d_omega(phi)
///   p~3 = -d_s(phi)                       (returned as (-1, 0))
///   p~4 = f_41 d_s(phi) + omega f_42 d_omega(phi)
///   p~5 = f_51 d_s(phi) + omega f_52 d_omega(phi)
///   p~6 = omega f_61 d_s(phi) + omega^2 f_62 d_omega(phi)
/// Throws std::invalid_argument for i outside 1..6 and std::domain_error when
/// a prolate denominator degenerates.
std::pair<double, double> coefficient_pair(const AcquisitionGeometry& geom, int i,
                                           const PairPoint& p);

/// Identity 1 coefficients evaluated through the independent Cartesian closed
/// form; agrees with coefficient_pair(geom, 1, p) on non-degenerate points.
std::pair<double, double> coefficient_pair_cartesian(const AcquisitionGeometry& geom,
                                                     const PairPoint& p);

/// Evaluates both sides of identity i and packages the residuals, using
/// rel_residual = |lhs - rhs| / (|lhs| + |rhs| + 1e-30).
IdentityResidual check_identity(const AcquisitionGeometry& geom, int i,
                                const PairPoint& p);

/// cos(theta) - cos(theta') computed directly from the prolate conversions
/// and through its decomposition over d_s(phi) and d_omega(phi).
CosThetaDifference cos_theta_difference(const AcquisitionGeometry& geom,
                                        const PairPoint& p);

/// Relative residual of the rational identity relating cosh(rho)/(cosh^2 rho
/// - cos^2 theta) for the two points to a single common-denominator form.
double handy_identity_check(const AcquisitionGeometry& geom, const PairPoint& p);

/// Draws a random non-degenerate PairPoint: s inside the slow-time window,
/// offsets up to four length scales around it, and |omega| in [0.05, 10].
PairPoint random_pair_point(const AcquisitionGeometry& geom, Rng& rng);

}  // namespace bsar
