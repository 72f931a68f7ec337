// The canonical relation of the forward map, its two coordinate projections,
// and the classification of their singularities.  The relation is charted by
// (x1, x2, s, omega); the left projection lands in data phase space
// (s, t, sigma, tau) and the right projection lands in scene phase space
// (x1, x2, xi1, xi2).  Both projections share a single closed-form Jacobian
// determinant that vanishes exactly on the plane x2 = 0, where the left
// projection drops rank with kernel transverse to that plane (a fold) and the
// right projection drops rank with kernel tangent to it (a blowdown).
#pragma once

#include <Eigen/Dense>

#include "bsar/geometry.hpp"

namespace bsar {

/// Chart coordinates on the canonical relation.
struct ChartPoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double s = 0.0;
  double omega = 0.0;
};

/// Data-side phase-space coordinates produced by the left projection.
struct DataCovector {
  double s = 0.0;
  double t = 0.0;
  double sigma = 0.0;
  double tau = 0.0;
};

/// Scene-side phase-space coordinates produced by the right projection.
struct SceneCovector {
  double x1 = 0.0;
  double x2 = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
};

/// Image of one chart point under both projections.
struct CanonicalPoint {
  DataCovector left;
  SceneCovector right;
};

enum class Projection { left, right };

enum class SingularityVerdict { regular, fold, blowdown };

/// Outcome of classifying one projection at one chart point.
struct SingularityReport {
  Projection projection = Projection::left;
  SingularityVerdict verdict = SingularityVerdict::regular;
  /// Closed-form Jacobian determinant (identical for both projections).
  double det_closed_form = 0.0;
  /// Determinant of the finite-difference Jacobian, for cross-checking.
  double det_finite_diff = 0.0;
  /// Smallest singular value divided by the largest one.
  double singular_value_ratio = 0.0;
  /// Unit kernel direction in chart coordinates (x1, x2, s, omega) when the
  /// Jacobian drops rank; zero otherwise.  Sign-normalized so the component
  /// of largest magnitude is positive.
  Eigen::Vector4d kernel_direction = Eigen::Vector4d::Zero();
  /// Whether the kernel direction is tangent to the critical plane x2 = 0.
  bool kernel_in_critical_plane = false;
  /// Central-difference derivative of the closed-form determinant along x2.
  double d_det_along_x2 = 0.0;
};

/// Evaluates both projections at a chart point.  Throws std::invalid_argument
/// when omega == 0 (the relation excludes the zero covector).
CanonicalPoint lambda_point(const AcquisitionGeometry& geom, const ChartPoint& c);

/// Analytic Jacobian of the left projection; rows are (s, t, sigma, tau),
/// columns are (x1, x2, s, omega).
Eigen::Matrix4d dpi_left(const AcquisitionGeometry& geom, const ChartPoint& c);

/// Analytic Jacobian of the right projection; rows are (x1, x2, xi1, xi2),
/// columns are (x1, x2, s, omega).
Eigen::Matrix4d dpi_right(const AcquisitionGeometry& geom, const ChartPoint& c);

/// Central finite-difference Jacobian of the left projection.
Eigen::Matrix4d dpi_left_finite_diff(const AcquisitionGeometry& geom,
                                     const ChartPoint& c);

/// Central finite-difference Jacobian of the right projection.
Eigen::Matrix4d dpi_right_finite_diff(const AcquisitionGeometry& geom,
                                      const ChartPoint& c);

/// Closed-form Jacobian determinant shared by both projections:
///   -(omega / c0^2) * x2 * (1/X1^2 + 1/X2^2) * positivity_term.
double det_dpi_left(const AcquisitionGeometry& geom, const ChartPoint& c);

/// The strictly positive factor 1 + N / (X1 X2) of the shared determinant,
/// with N = (x1 - s)^2 + x2^2 + h^2 - alpha^2.  At x = (s, 0) this equals
/// 2 h^2 / (h^2 + alpha^2).
double positivity_term(const AcquisitionGeometry& geom, double s, GroundPoint x);

/// Whether a chart point lies on the critical plane x2 = 0, up to a scale-
/// aware tolerance of 1e-9 * max(1, |x1| + |s|).
bool on_critical_set(const ChartPoint& c);

/// Classifies the chosen projection at a chart point: regular off the
/// critical plane, fold (left) or blowdown (right) on it.  Throws
/// std::invalid_argument when omega == 0 and std::domain_error when the
/// numerical evidence is ambiguous (for example a rank drop away from the
/// critical plane, or an on-plane kernel that matches neither pattern).
SingularityReport classify_singularity(const AcquisitionGeometry& geom,
                                       const ChartPoint& c, Projection projection);

}  // namespace bsar
