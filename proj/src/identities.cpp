#include "bsar/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bsar/phase.hpp"

namespace bsar {

namespace {

// Prolate building blocks shared by every coefficient chain, all evaluated
// with c0 = 1; the frequency scalings are applied at the call sites.
struct ProlateBlocks {
  double crx = 0.0;  // cosh(rho) at x
  double ctx = 0.0;  // cos(theta) at x
  double cry = 0.0;  // cosh(rho') at y
  double cty = 0.0;  // cos(theta') at y
  double Dx = 0.0;   // cosh^2(rho) - cos^2(theta)
  double Dy = 0.0;
  double Dxy = 0.0;  // cosh^2(rho) - cos^2(theta')
  double E = 0.0;    // (cosh^2(rho) - 1)(cosh^2(rho) + cos(theta)cos(theta'))
  double B1 = 0.0;   // cos(theta)-cos(theta') = B1*(c0 d_s phi)/omega + B2*(c0 d_omega phi)
  double B2 = 0.0;
  double a = 0.0;    // cosh(rho)/Dx
  double b = 0.0;    // cosh(rho')/Dy
  double H1 = 0.0;
  double H2 = 0.0;
  double f21 = 0.0;  // identity-2 chain, c0 = 1
  double f22 = 0.0;
};

ProlateBlocks prolate_blocks(const AcquisitionGeometry& geom, const PairPoint& p) {
  ProlateBlocks k;
  k.crx = std::cosh(p.prolate_x.rho);
  k.ctx = std::cos(p.prolate_x.theta);
  k.cry = std::cosh(p.prolate_y.rho);
  k.cty = std::cos(p.prolate_y.theta);
  k.Dx = k.crx * k.crx - k.ctx * k.ctx;
  k.Dy = k.cry * k.cry - k.cty * k.cty;
  k.Dxy = k.crx * k.crx - k.cty * k.cty;

  const double e1 = k.crx * k.crx - 1.0;
  const double e2 = k.crx * k.crx + k.ctx * k.cty;
  if (e1 <= 1e-12 || e2 <= 1e-12)
    throw std::domain_error(
        "coefficient_pair: prolate denominator degenerates at this pair");
  k.E = e1 * e2;

  const double alpha = geom.alpha;
  const double s2ty = 1.0 - k.cty * k.cty;
  k.B1 = k.Dx * k.Dxy / (2.0 * k.E);
  k.B2 = k.Dx * k.cty * s2ty * (k.crx + k.cry) / (2.0 * alpha * k.E * k.Dy);

  k.a = k.crx / k.Dx;
  k.b = k.cry / k.Dy;
  k.H1 = (k.crx * k.cry + k.ctx * k.ctx) / (2.0 * alpha * k.Dx * k.Dy);
  k.H2 = k.crx * (k.ctx + k.cty) / (k.Dx * k.Dy);

  const double G1 =
      (alpha / 2.0) * (-(k.crx + k.cry) + (k.crx * k.ctx + k.cry * k.cty) * k.ctx);
  const double G2 =
      alpha * alpha * ((k.ctx + k.cty) - (k.crx * k.ctx + k.cry * k.cty) * k.cry);
  k.f21 = G2 * k.B1;
  k.f22 = G1 + G2 * k.B2;
  return k;
}

double rel_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-30);
}

void require_index(int i, const char* where) {
  if (i < 1 || i > 6)
    throw std::invalid_argument(std::string(where) +
                                ": identity index must lie in 1..6");
}

}  // namespace

PairPoint make_pair_point(const AcquisitionGeometry& geom, GroundPoint x,
                          GroundPoint y, double s, double omega) {
  if (omega == 0.0)
    throw std::invalid_argument("make_pair_point: omega must be nonzero");
  PairPoint p;
  p.x = x;
  p.y = y;
  p.s = s;
  p.omega = omega;
  p.prolate_x = ground_to_prolate(geom, s, x);
  p.prolate_y = ground_to_prolate(geom, s, y);
  if (p.prolate_x.degenerate || p.prolate_y.degenerate)
    throw std::domain_error("make_pair_point: point at (s, 0) degenerates the chart");
  return p;
}

double ptilde(const AcquisitionGeometry& geom, int i, const PairPoint& p) {
  require_index(i, "ptilde");
  if (i == 1) return p.x.x1 - p.y.x1;
  if (i == 2) return p.x.x2 * p.x.x2 - p.y.x2 * p.y.x2;

  const auto d = phi_derivs(geom, {p.x, p.y, p.s, p.omega});
  switch (i) {
    case 3: return d.xi1() - d.eta1();
    case 4: return (p.x.x2 + p.y.x2) * (d.xi2() - d.eta2());
    case 5: return (p.x.x2 - p.y.x2) * (d.xi2() + d.eta2());
    default: return d.xi2() * d.xi2() - d.eta2() * d.eta2();
  }
}

std::pair<double, double> coefficient_pair(const AcquisitionGeometry& geom, int i,
                                           const PairPoint& p) {
  require_index(i, "coefficient_pair");
  if (i == 3) return {-1.0, 0.0};

  const auto k = prolate_blocks(geom, p);
  const double alpha = geom.alpha;
  const double c0 = geom.c0;

  if (i == 1) {
    const double f11 = alpha * k.cry * k.B1;
    const double f12 = alpha * k.cry * k.B2 - k.ctx / 2.0;
    return {c0 * f11, c0 * f12};
  }
  if (i == 2) return {c0 * k.f21, c0 * k.f22};

  const double x2 = p.x.x2;
  const double y2 = p.y.x2;
  if (i == 4 || i == 5) {
    const double m = i == 4 ? x2 * x2 + x2 * y2 : x2 * x2 - x2 * y2;
    const double f1 = -(2.0 / alpha) * (m * k.H2 * k.B1 + k.b * k.f21);
    const double f2 = -(2.0 / alpha) * (m * (k.H1 + k.H2 * k.B2) + k.b * k.f22);
    return {f1, f2};
  }

  const double scale = 4.0 / (alpha * alpha * c0);
  const double f61 = scale * (x2 * x2 * (k.a + k.b) * k.H2 * k.B1 + k.b * k.b * k.f21);
  const double f62 =
      scale * (x2 * x2 * (k.a + k.b) * (k.H1 + k.H2 * k.B2) + k.b * k.b * k.f22);
  return {f61, f62};
}

std::pair<double, double> coefficient_pair_cartesian(const AcquisitionGeometry& geom,
                                                     const PairPoint& p) {
  const double alpha = geom.alpha;
  const auto rx = bistatic_range(geom, p.s, p.x);
  const auto ry = bistatic_range(geom, p.s, p.y);
  const double SX = rx.total();
  const double SY = ry.total();
  const double c2r = (SX / (2.0 * alpha)) * (SX / (2.0 * alpha));
  const double ux = p.x.x1 - p.s;
  const double uy = p.y.x1 - p.s;
  const double denom = (c2r - 1.0) * (c2r + 4.0 * ux * uy / (SX * SY));
  if (std::abs(denom) <= 1e-12)
    throw std::domain_error(
        "coefficient_pair_cartesian: denominator degenerates at this pair");

  const double f11 = alpha * (SY / (2.0 * alpha)) * (rx.X1 * rx.X2 / (alpha * alpha)) *
                     (c2r - 4.0 * uy * uy / (SY * SY)) / (2.0 * denom);
  const double t1 = 2.0 * ux / SX;
  const double num = rx.X1 * rx.X2 * (2.0 * uy / SY) *
                     (1.0 - 4.0 * uy * uy / (SY * SY)) * ((SX + SY) / (2.0 * alpha)) *
                     (SY / (2.0 * alpha));
  const double f12 = -0.5 * (t1 - num / (ry.X1 * ry.X2 * denom));
  return {geom.c0 * f11, geom.c0 * f12};
}

IdentityResidual check_identity(const AcquisitionGeometry& geom, int i,
                                const PairPoint& p) {
  require_index(i, "check_identity");

  IdentityResidual out;
  out.identity_index = i;
  out.lhs = ptilde(geom, i, p);

  const auto d = phi_derivs(geom, {p.x, p.y, p.s, p.omega});
  if (i == 3) {
    out.rhs = -d.ds;
  } else {
    const auto [f1, f2] = coefficient_pair(geom, i, p);
    out.coefficients.emplace_back(f1, f2);
    const double w = p.omega;
    switch (i) {
      case 1:
      case 2: out.rhs = (f1 / w) * d.ds + f2 * d.domega; break;
      case 4:
      case 5: out.rhs = f1 * d.ds + w * f2 * d.domega; break;
      default: out.rhs = w * f1 * d.ds + w * w * f2 * d.domega; break;
    }
  }

  out.abs_residual = std::abs(out.lhs - out.rhs);
  out.rel_residual = rel_residual(out.lhs, out.rhs);
  return out;
}

CosThetaDifference cos_theta_difference(const AcquisitionGeometry& geom,
                                        const PairPoint& p) {
  const auto k = prolate_blocks(geom, p);
  const auto d = phi_derivs(geom, {p.x, p.y, p.s, p.omega});
  CosThetaDifference out;
  out.direct = k.ctx - k.cty;
  out.formula =
      k.B1 * (geom.c0 * d.ds) / p.omega + k.B2 * (geom.c0 * d.domega);
  return out;
}

double handy_identity_check(const AcquisitionGeometry& geom, const PairPoint& p) {
  const auto k = prolate_blocks(geom, p);
  const double lhs = k.crx / k.Dx - k.cry / k.Dy;
  const double rhs = ((k.crx * k.cry + k.ctx * k.ctx) * (k.cry - k.crx) +
                      k.crx * (k.ctx + k.cty) * (k.ctx - k.cty)) /
                     (k.Dx * k.Dy);
  return rel_residual(lhs, rhs);
}

PairPoint random_pair_point(const AcquisitionGeometry& geom, Rng& rng) {
  const double L = std::max({geom.alpha, geom.h, 1.0});
  const double excl = 1e-3 * geom.alpha;
  for (;;) {
    const double s = rng.uniform(geom.s0, geom.s1);
    const GroundPoint x{s + rng.uniform(-4.0 * L, 4.0 * L),
                        rng.uniform(-4.0 * L, 4.0 * L)};
    const GroundPoint y{s + rng.uniform(-4.0 * L, 4.0 * L),
                        rng.uniform(-4.0 * L, 4.0 * L)};
    if (std::hypot(x.x1 - s, x.x2) < excl || std::hypot(y.x1 - s, y.x2) < excl)
      continue;
    const double omega = rng.sign() * rng.uniform(0.05, 10.0);
    return make_pair_point(geom, x, y, s, omega);
  }
}

}  // namespace bsar
