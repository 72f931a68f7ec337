#include "bsar/phase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsar/rng.hpp"

namespace bsar {

double psi(const AcquisitionGeometry& geom, const ForwardPhasePoint& p) {
  const double R = bistatic_range(geom, p.s, p.x).total();
  return -p.omega * (p.t - R / geom.c0);
}

PsiDerivs psi_derivs(const AcquisitionGeometry& geom, const ForwardPhasePoint& p) {
  const auto r = bistatic_range(geom, p.s, p.x);
  const auto g = range_gradient(geom, p.s, p.x);
  const double w = p.omega / geom.c0;
  PsiDerivs d;
  d.ds = w * g.dR_ds;
  d.dt = -p.omega;
  d.dx1 = w * g.dR_dx1;
  d.dx2 = w * g.dR_dx2;
  d.domega = -(p.t - r.total() / geom.c0);
  return d;
}

double phi(const AcquisitionGeometry& geom, const KernelPhasePoint& p) {
  const double Rx = bistatic_range(geom, p.s, p.x).total();
  const double Ry = bistatic_range(geom, p.s, p.y).total();
  return (p.omega / geom.c0) * (Ry - Rx);
}

PhiDerivs phi_derivs(const AcquisitionGeometry& geom, const KernelPhasePoint& p) {
  const auto rx = bistatic_range(geom, p.s, p.x);
  const auto ry = bistatic_range(geom, p.s, p.y);
  const auto gx = range_gradient(geom, p.s, p.x);
  const auto gy = range_gradient(geom, p.s, p.y);
  const double w = p.omega / geom.c0;
  PhiDerivs d;
  d.dx1 = -w * gx.dR_dx1;
  d.dx2 = -w * gx.dR_dx2;
  d.dy1 = w * gy.dR_dx1;
  d.dy2 = w * gy.dR_dx2;
  // The phase depends on s only through x1 - s and y1 - s, so its s-derivative
  // is exactly -(d/dx1 + d/dy1); assembling it that way keeps the relation
  // bitwise true in floating point as well.
  d.ds = -(d.dx1 + d.dy1);
  d.domega = (ry.total() - rx.total()) / geom.c0;
  return d;
}

namespace {

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

double fd_step(double coord) { return 1e-6 * std::max(1.0, std::abs(coord)); }

}  // namespace

double check_phase_gradients(const AcquisitionGeometry& geom, int samples,
                             std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("check_phase_gradients: samples must be >= 1");

  Rng rng(seed);
  const double L = std::max({geom.alpha, geom.h, 1.0});
  double worst = 0.0;

  auto track = [&](double analytic, double numeric) {
    worst = std::max(worst, rel_err(analytic, numeric));
  };

  for (int k = 0; k < samples; ++k) {
    const double s = rng.uniform(geom.s0, geom.s1);
    const double omega = rng.sign() * rng.uniform(0.5, 10.0);

    ForwardPhasePoint fp;
    fp.s = s;
    fp.t = rng.uniform(geom.t0, geom.t1);
    fp.x = {s + rng.uniform(-4.0 * L, 4.0 * L), rng.uniform(-4.0 * L, 4.0 * L)};
    fp.omega = omega;

    const auto pd = psi_derivs(geom, fp);
    auto psi_at = [&](double ds, double dt, double dx1, double dx2, double dw) {
      ForwardPhasePoint q = fp;
      q.s += ds;
      q.t += dt;
      q.x.x1 += dx1;
      q.x.x2 += dx2;
      q.omega += dw;
      return psi(geom, q);
    };
    {
      const double e = fd_step(fp.s);
      track(pd.ds, (psi_at(e, 0, 0, 0, 0) - psi_at(-e, 0, 0, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(fp.t);
      track(pd.dt, (psi_at(0, e, 0, 0, 0) - psi_at(0, -e, 0, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(fp.x.x1);
      track(pd.dx1, (psi_at(0, 0, e, 0, 0) - psi_at(0, 0, -e, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(fp.x.x2);
      track(pd.dx2, (psi_at(0, 0, 0, e, 0) - psi_at(0, 0, 0, -e, 0)) / (2 * e));
    }
    {
      const double e = fd_step(fp.omega);
      track(pd.domega, (psi_at(0, 0, 0, 0, e) - psi_at(0, 0, 0, 0, -e)) / (2 * e));
    }

    KernelPhasePoint kp;
    kp.s = s;
    kp.x = fp.x;
    kp.y = {s + rng.uniform(-4.0 * L, 4.0 * L), rng.uniform(-4.0 * L, 4.0 * L)};
    kp.omega = omega;

    const auto kd = phi_derivs(geom, kp);
    auto phi_at = [&](double dx1, double dx2, double dy1, double dy2, double ds,
                      double dw) {
      KernelPhasePoint q = kp;
      q.x.x1 += dx1;
      q.x.x2 += dx2;
      q.y.x1 += dy1;
      q.y.x2 += dy2;
      q.s += ds;
      q.omega += dw;
      return phi(geom, q);
    };
    {
      const double e = fd_step(kp.x.x1);
      track(kd.dx1, (phi_at(e, 0, 0, 0, 0, 0) - phi_at(-e, 0, 0, 0, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(kp.x.x2);
      track(kd.dx2, (phi_at(0, e, 0, 0, 0, 0) - phi_at(0, -e, 0, 0, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(kp.y.x1);
      track(kd.dy1, (phi_at(0, 0, e, 0, 0, 0) - phi_at(0, 0, -e, 0, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(kp.y.x2);
      track(kd.dy2, (phi_at(0, 0, 0, e, 0, 0) - phi_at(0, 0, 0, -e, 0, 0)) / (2 * e));
    }
    {
      const double e = fd_step(kp.s);
      track(kd.ds, (phi_at(0, 0, 0, 0, e, 0) - phi_at(0, 0, 0, 0, -e, 0)) / (2 * e));
    }
    {
      const double e = fd_step(kp.omega);
      track(kd.domega, (phi_at(0, 0, 0, 0, 0, e) - phi_at(0, 0, 0, 0, 0, -e)) / (2 * e));
    }
  }

  return worst;
}

}  // namespace bsar
