// Oscillatory phases of the forward map and of the composed imaging kernel,
// together with their exact first derivatives.  The forward phase couples a
// slow-time/fast-time sample (s, t) to a ground point x at angular frequency
// omega; the kernel phase couples an output ground point x to an input ground
// point y through a shared slow time s.  Frequency-domain covariables are read
// off these gradients, so every derivative here is closed-form and is cross-
// checked against finite differences by check_phase_gradients().
#pragma once

#include <cstdint>

#include "bsar/geometry.hpp"

namespace bsar {

/// Argument bundle for the forward phase: slow time s, fast time t, ground
/// point x, and angular frequency omega.
struct ForwardPhasePoint {
  double s = 0.0;
  double t = 0.0;
  GroundPoint x;
  double omega = 0.0;
};

/// Argument bundle for the imaging-kernel phase: output point x, input point
/// y, shared slow time s, and angular frequency omega.
struct KernelPhasePoint {
  GroundPoint x;
  GroundPoint y;
  double s = 0.0;
  double omega = 0.0;
};

/// First derivatives of the forward phase with respect to every argument.
struct PsiDerivs {
  double ds = 0.0;
  double dt = 0.0;
  double dx1 = 0.0;
  double dx2 = 0.0;
  double domega = 0.0;
};

/// First derivatives of the kernel phase with respect to every argument.
/// The covariables attached to the output point are (xi1, xi2) = (d/dx) phi
/// and those attached to the input point are (eta1, eta2) = -(d/dy) phi.
struct PhiDerivs {
  double dx1 = 0.0;
  double dx2 = 0.0;
  double dy1 = 0.0;
  double dy2 = 0.0;
  double ds = 0.0;
  double domega = 0.0;

  double xi1() const { return dx1; }
  double xi2() const { return dx2; }
  double eta1() const { return -dy1; }
  double eta2() const { return -dy2; }
};

/// Forward phase: -omega * (t - R(s, x) / c0) where R is the two-leg range.
double psi(const AcquisitionGeometry& geom, const ForwardPhasePoint& p);

/// Closed-form gradient of psi with respect to (s, t, x1, x2, omega).
PsiDerivs psi_derivs(const AcquisitionGeometry& geom, const ForwardPhasePoint& p);

/// Kernel phase: (omega / c0) * (R(s, y) - R(s, x)).
double phi(const AcquisitionGeometry& geom, const KernelPhasePoint& p);

/// Closed-form gradient of phi with respect to (x1, x2, y1, y2, s, omega).
PhiDerivs phi_derivs(const AcquisitionGeometry& geom, const KernelPhasePoint& p);

/// Draws `samples` random argument bundles, compares every closed-form
/// derivative of both phases against central finite differences, and returns
/// the largest relative error seen.  Throws std::invalid_argument when
/// samples < 1.
double check_phase_gradients(const AcquisitionGeometry& geom, int samples,
                             std::uint64_t seed);

}  // namespace bsar
