#include "bsar/microlocal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsar {

namespace {

// Range legs and every first partial of the range needed by the Jacobians,
// all evaluated at one (s, x).
struct RangePartials {
  double X1 = 0.0;
  double X2 = 0.0;
  double P = 0.0;  // dR/dx1 (and -dR/ds)
  double Q = 0.0;  // dR/dx2
  double W = 0.0;  // dP/dx1
  double Z = 0.0;  // -dP/dx2 (and dQ/ds)
  double U = 0.0;  // dQ/dx2
};

RangePartials range_partials(const AcquisitionGeometry& geom, double s, double x1,
                             double x2) {
  RangePartials r;
  const double d1 = x1 - s - geom.alpha;
  const double d2 = x1 - s + geom.alpha;
  const double q = x2 * x2 + geom.h * geom.h;
  r.X1 = std::sqrt(d1 * d1 + q);
  r.X2 = std::sqrt(d2 * d2 + q);
  const double i1 = 1.0 / r.X1;
  const double i2 = 1.0 / r.X2;
  const double i13 = i1 * i1 * i1;
  const double i23 = i2 * i2 * i2;
  r.P = d1 * i1 + d2 * i2;
  r.Q = x2 * (i1 + i2);
  r.W = q * (i13 + i23);
  r.Z = x2 * (d1 * i13 + d2 * i23);
  r.U = (i1 + i2) - x2 * x2 * (i13 + i23);
  return r;
}

void require_nonzero_frequency(const ChartPoint& c, const char* where) {
  if (c.omega == 0.0)
    throw std::invalid_argument(std::string(where) +
                                ": omega must be nonzero on the relation");
}

Eigen::Vector4d left_coords(const AcquisitionGeometry& geom, const ChartPoint& c) {
  const auto r = range_partials(geom, c.s, c.x1, c.x2);
  const double w = c.omega / geom.c0;
  return {c.s, (r.X1 + r.X2) / geom.c0, -w * r.P, -c.omega};
}

Eigen::Vector4d right_coords(const AcquisitionGeometry& geom, const ChartPoint& c) {
  const auto r = range_partials(geom, c.s, c.x1, c.x2);
  const double w = c.omega / geom.c0;
  return {c.x1, c.x2, -w * r.P, -w * r.Q};
}

using CoordFn = Eigen::Vector4d (*)(const AcquisitionGeometry&, const ChartPoint&);

Eigen::Matrix4d finite_diff_jacobian(const AcquisitionGeometry& geom,
                                     const ChartPoint& c, CoordFn f) {
  Eigen::Matrix4d J;
  const double coords[4] = {c.x1, c.x2, c.s, c.omega};
  for (int j = 0; j < 4; ++j) {
    const double e = 1e-6 * std::max(1.0, std::abs(coords[j]));
    ChartPoint lo = c;
    ChartPoint hi = c;
    switch (j) {
      case 0: lo.x1 -= e; hi.x1 += e; break;
      case 1: lo.x2 -= e; hi.x2 += e; break;
      case 2: lo.s -= e; hi.s += e; break;
      default: lo.omega -= e; hi.omega += e; break;
    }
    J.col(j) = (f(geom, hi) - f(geom, lo)) / (2.0 * e);
  }
  return J;
}

}  // namespace

CanonicalPoint lambda_point(const AcquisitionGeometry& geom, const ChartPoint& c) {
  require_nonzero_frequency(c, "lambda_point");
  const auto l = left_coords(geom, c);
  const auto r = right_coords(geom, c);
  return {{l(0), l(1), l(2), l(3)}, {r(0), r(1), r(2), r(3)}};
}

Eigen::Matrix4d dpi_left(const AcquisitionGeometry& geom, const ChartPoint& c) {
  require_nonzero_frequency(c, "dpi_left");
  const auto r = range_partials(geom, c.s, c.x1, c.x2);
  const double ic = 1.0 / geom.c0;
  const double w = c.omega * ic;
  Eigen::Matrix4d J;
  J << 0.0, 0.0, 1.0, 0.0,                                //
      r.P * ic, r.Q * ic, -r.P * ic, 0.0,                 //
      -w * r.W, w * r.Z, w * r.W, -r.P * ic,              //
      0.0, 0.0, 0.0, -1.0;
  return J;
}

Eigen::Matrix4d dpi_right(const AcquisitionGeometry& geom, const ChartPoint& c) {
  require_nonzero_frequency(c, "dpi_right");
  const auto r = range_partials(geom, c.s, c.x1, c.x2);
  const double ic = 1.0 / geom.c0;
  const double w = c.omega * ic;
  Eigen::Matrix4d J;
  J << 1.0, 0.0, 0.0, 0.0,                                //
      0.0, 1.0, 0.0, 0.0,                                 //
      -w * r.W, w * r.Z, w * r.W, -r.P * ic,              //
      w * r.Z, -w * r.U, -w * r.Z, -r.Q * ic;
  return J;
}

Eigen::Matrix4d dpi_left_finite_diff(const AcquisitionGeometry& geom,
                                     const ChartPoint& c) {
  require_nonzero_frequency(c, "dpi_left_finite_diff");
  return finite_diff_jacobian(geom, c, &left_coords);
}

Eigen::Matrix4d dpi_right_finite_diff(const AcquisitionGeometry& geom,
                                      const ChartPoint& c) {
  require_nonzero_frequency(c, "dpi_right_finite_diff");
  return finite_diff_jacobian(geom, c, &right_coords);
}

double det_dpi_left(const AcquisitionGeometry& geom, const ChartPoint& c) {
  const auto r = range_partials(geom, c.s, c.x1, c.x2);
  const double i1 = 1.0 / r.X1;
  const double i2 = 1.0 / r.X2;
  return -(c.omega / (geom.c0 * geom.c0)) * c.x2 * (i1 * i1 + i2 * i2) *
         positivity_term(geom, c.s, {c.x1, c.x2});
}

double positivity_term(const AcquisitionGeometry& geom, double s, GroundPoint x) {
  const auto r = bistatic_range(geom, s, x);
  const double d = x.x1 - s;
  const double N = d * d + x.x2 * x.x2 + geom.h * geom.h - geom.alpha * geom.alpha;
  const double prod = r.X1 * r.X2;
  if (N >= 0.0) return 1.0 + N / prod;
  // For N < 0 the direct form cancels catastrophically when |N| ~ X1*X2.
  // Using (X1 X2)^2 - N^2 = 4 alpha^2 (x2^2 + h^2) (exact algebra of the two
  // legs) gives an equivalent expression out of positive factors only.
  const double q = x.x2 * x.x2 + geom.h * geom.h;
  return 4.0 * geom.alpha * geom.alpha * q / (prod * (prod - N));
}

bool on_critical_set(const ChartPoint& c) {
  return std::abs(c.x2) <= 1e-9 * std::max(1.0, std::abs(c.x1) + std::abs(c.s));
}

SingularityReport classify_singularity(const AcquisitionGeometry& geom,
                                       const ChartPoint& c, Projection projection) {
  require_nonzero_frequency(c, "classify_singularity");

  const Eigen::Matrix4d J =
      projection == Projection::left ? dpi_left(geom, c) : dpi_right(geom, c);
  const Eigen::Matrix4d Jfd = projection == Projection::left
                                  ? dpi_left_finite_diff(geom, c)
                                  : dpi_right_finite_diff(geom, c);

  SingularityReport rep;
  rep.projection = projection;
  rep.det_closed_form = det_dpi_left(geom, c);
  rep.det_finite_diff = Jfd.determinant();

  Eigen::JacobiSVD<Eigen::Matrix4d> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  rep.singular_value_ratio = sv(3) / sv(0);
  const bool rank_drop = sv(3) <= 1e-8 * sv(0);

  {
    const double e = 1e-6 * std::max(1.0, std::abs(c.x2));
    ChartPoint lo = c;
    ChartPoint hi = c;
    lo.x2 -= e;
    hi.x2 += e;
    rep.d_det_along_x2 =
        (det_dpi_left(geom, hi) - det_dpi_left(geom, lo)) / (2.0 * e);
  }

  if (!on_critical_set(c)) {
    if (rank_drop)
      throw std::domain_error(
          "classify_singularity: rank drop away from the critical plane");
    rep.verdict = SingularityVerdict::regular;
    return rep;
  }

  if (!rank_drop)
    throw std::domain_error(
        "classify_singularity: full rank on the critical plane");

  Eigen::Vector4d kernel = svd.matrixV().col(3);
  int imax = 0;
  kernel.cwiseAbs().maxCoeff(&imax);
  if (kernel(imax) < 0.0) kernel = -kernel;
  rep.kernel_direction = kernel;
  rep.kernel_in_critical_plane = std::abs(kernel(1)) <= 1e-8;

  if (projection == Projection::left) {
    const bool transverse = std::abs(kernel(1)) >= 1.0 - 1e-8;
    if (!transverse || rep.d_det_along_x2 == 0.0)
      throw std::domain_error(
          "classify_singularity: on-plane kernel does not match a fold");
    rep.verdict = SingularityVerdict::fold;
  } else {
    if (!rep.kernel_in_critical_plane)
      throw std::domain_error(
          "classify_singularity: on-plane kernel does not match a blowdown");
    rep.verdict = SingularityVerdict::blowdown;
  }
  return rep;
}

}  // namespace bsar
