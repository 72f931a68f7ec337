#include "bsar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bsar/identities.hpp"
#include "bsar/microlocal.hpp"
#include "bsar/operators.hpp"
#include "bsar/phase.hpp"
#include "bsar/rng.hpp"

namespace bsar {

namespace {

double rel_gap(double a, double b) {
  return std::abs(a - b) / (std::abs(a) + std::abs(b) + 1e-30);
}

void stamp(VerificationReport& rep, const RunConfig& cfg, const char* suite) {
  rep.put("suite", std::string(suite));
  rep.put("config_hash", cfg.hash());
}

}  // namespace

IdentitySuiteResult run_identity_suite(const RunConfig& cfg,
                                       const IdentitySuiteParams& params) {
  IdentitySuiteResult res;

  // The configured geometry plus a band of random ones; the identities are
  // geometry-independent algebra, so all of them must pass at once.
  std::vector<AcquisitionGeometry> geoms{cfg.geometry};
  Rng geom_rng(params.seed ^ 0x9e3779b97f4a7c15ull);
  for (int g = 0; g < params.extra_geometries; ++g) {
    AcquisitionGeometry geom = cfg.geometry;
    geom.alpha = geom_rng.uniform(0.2, 5.0);
    geom.h = geom_rng.uniform(0.2, 5.0);
    geoms.push_back(geom);
  }

  Rng rng(params.seed);
  for (int k = 0; k < params.samples; ++k) {
    const AcquisitionGeometry& geom = geoms[static_cast<std::size_t>(k) % geoms.size()];
    const PairPoint p = random_pair_point(geom, rng);

    for (int i = 1; i <= 6; ++i) {
      const IdentityResidual r = check_identity(geom, i, p);
      auto& worst = res.max_rel_residual[static_cast<std::size_t>(i - 1)];
      worst = std::max(worst, r.rel_residual);
      for (const auto& [f1, f2] : r.coefficients)
        res.max_coefficient =
            std::max({res.max_coefficient, std::abs(f1), std::abs(f2)});
    }

    res.max_handy_residual =
        std::max(res.max_handy_residual, handy_identity_check(geom, p));

    const CosThetaDifference ct = cos_theta_difference(geom, p);
    res.max_cos_theta_error =
        std::max(res.max_cos_theta_error,
                 std::abs(ct.direct - ct.formula) / (1.0 + std::abs(ct.direct)));

    const auto prolate = coefficient_pair(geom, 1, p);
    const auto cartesian = coefficient_pair_cartesian(geom, p);
    res.max_cartesian_gap =
        std::max({res.max_cartesian_gap, rel_gap(prolate.first, cartesian.first),
                  rel_gap(prolate.second, cartesian.second)});
  }

  VerificationReport& rep = res.report;
  stamp(rep, cfg, "identities");
  rep.put("samples", std::to_string(params.samples));
  rep.put("seed", std::to_string(params.seed));
  rep.put("geometries", std::to_string(geoms.size()));
  rep.put("tol_identity", cfg.tol_identity);
  rep.put("tol_identity3", cfg.tol_identity3);
  for (int i = 1; i <= 6; ++i)
    rep.put("max_rel_residual_identity_" + std::to_string(i),
            res.max_rel_residual[static_cast<std::size_t>(i - 1)]);
  rep.put("max_handy_residual", res.max_handy_residual);
  rep.put("max_cos_theta_error", res.max_cos_theta_error);
  rep.put("max_cartesian_gap", res.max_cartesian_gap);
  rep.put("max_coefficient", res.max_coefficient);

  for (int i = 1; i <= 6; ++i) {
    const double tol = i == 3 ? cfg.tol_identity3 : cfg.tol_identity;
    rep.put_check("identity_" + std::to_string(i) + "_within_tol",
                  res.max_rel_residual[static_cast<std::size_t>(i - 1)] <= tol);
  }
  rep.put_check("handy_within_tol", res.max_handy_residual <= 1e-10);
  rep.put_check("cos_theta_within_tol", res.max_cos_theta_error <= 1e-9);
  rep.put_check("cartesian_within_tol", res.max_cartesian_gap <= 1e-9);
  rep.put_check("coefficients_bounded", std::isfinite(res.max_coefficient));
  res.passed = rep.passed();
  return res;
}

MicrolocalSuiteResult run_microlocal_suite(const RunConfig& cfg,
                                           const MicrolocalSuiteParams& params) {
  MicrolocalSuiteResult res;
  const AcquisitionGeometry& geom = cfg.geometry;
  const double L = std::max({geom.alpha, geom.h, 1.0});

  Rng rng(params.seed);
  auto random_omega = [&] { return rng.sign() * rng.uniform(0.05, 10.0); };

  // Determinant agreement away from the critical plane: closed form vs the
  // finite-difference Jacobian, and left vs right analytic determinants.
  for (int k = 0; k < params.chart_samples; ++k) {
    ChartPoint c;
    c.s = rng.uniform(geom.s0, geom.s1);
    c.x1 = c.s + rng.uniform(-4.0 * L, 4.0 * L);
    c.x2 = rng.sign() * rng.uniform(1e-2, 4.0 * L);
    c.omega = random_omega();

    const double closed = det_dpi_left(geom, c);
    const double fd = dpi_left_finite_diff(geom, c).determinant();
    const double left = dpi_left(geom, c).determinant();
    const double right = dpi_right(geom, c).determinant();

    res.max_det_fd_error = std::max(res.max_det_fd_error, rel_gap(closed, fd));
    res.max_det_pair_error = std::max(res.max_det_pair_error, rel_gap(left, right));
    res.max_det_closed_error =
        std::max(res.max_det_closed_error, rel_gap(closed, left));
  }

  // Verdicts: exactly on the critical plane each projection must report its
  // own singularity type; off the plane both must be regular.
  res.min_fold_alignment = 1.0;
  res.min_fold_det_slope = std::numeric_limits<double>::infinity();
  bool verdicts_ok = true;
  for (int k = 0; k < params.verdict_samples; ++k) {
    ChartPoint c;
    c.s = rng.uniform(geom.s0, geom.s1);
    c.x1 = c.s + rng.uniform(-4.0 * L, 4.0 * L);
    c.x2 = 0.0;
    c.omega = random_omega();

    const auto fold = classify_singularity(geom, c, Projection::left);
    const auto blow = classify_singularity(geom, c, Projection::right);
    verdicts_ok = verdicts_ok && fold.verdict == SingularityVerdict::fold &&
                  blow.verdict == SingularityVerdict::blowdown;
    res.folds += fold.verdict == SingularityVerdict::fold;
    res.blowdowns += blow.verdict == SingularityVerdict::blowdown;
    res.min_fold_alignment =
        std::min(res.min_fold_alignment, std::abs(fold.kernel_direction(1)));
    res.max_blowdown_leak =
        std::max(res.max_blowdown_leak, std::abs(blow.kernel_direction(1)));
    res.min_fold_det_slope =
        std::min(res.min_fold_det_slope, std::abs(fold.d_det_along_x2));

    c.x2 = rng.sign() * rng.uniform(1e-2, 4.0 * L);
    const auto reg_left = classify_singularity(geom, c, Projection::left);
    const auto reg_right = classify_singularity(geom, c, Projection::right);
    verdicts_ok = verdicts_ok &&
                  reg_left.verdict == SingularityVerdict::regular &&
                  reg_right.verdict == SingularityVerdict::regular;
    res.regulars += (reg_left.verdict == SingularityVerdict::regular) +
                    (reg_right.verdict == SingularityVerdict::regular);
  }

  // Positivity of the shared determinant factor over a wide random sweep of
  // geometries and offsets, plus the exact closed-form value under the track.
  res.min_positivity = std::numeric_limits<double>::infinity();
  for (int k = 0; k < params.positivity_samples; ++k) {
    AcquisitionGeometry g = geom;
    g.alpha = 10.0 * (1.0 - rng.unit());
    g.h = 10.0 * (1.0 - rng.unit());
    const double s = rng.uniform(-100.0, 100.0);
    const GroundPoint x{s + rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3)};
    res.min_positivity = std::min(res.min_positivity, positivity_term(g, s, x));

    const double center = positivity_term(g, s, {s, 0.0});
    const double expected = 2.0 * g.h * g.h / (g.h * g.h + g.alpha * g.alpha);
    res.max_center_error =
        std::max(res.max_center_error, std::abs(center - expected));
  }

  VerificationReport& rep = res.report;
  stamp(rep, cfg, "microlocal");
  rep.put("chart_samples", std::to_string(params.chart_samples));
  rep.put("verdict_samples", std::to_string(params.verdict_samples));
  rep.put("positivity_samples", std::to_string(params.positivity_samples));
  rep.put("seed", std::to_string(params.seed));
  rep.put("tol_det_fd", cfg.tol_det_fd);
  rep.put("tol_det_pair", cfg.tol_det_pair);
  rep.put("tol_kernel", cfg.tol_kernel);
  rep.put("max_det_fd_error", res.max_det_fd_error);
  rep.put("max_det_pair_error", res.max_det_pair_error);
  rep.put("max_det_closed_error", res.max_det_closed_error);
  rep.put("folds", std::to_string(res.folds));
  rep.put("blowdowns", std::to_string(res.blowdowns));
  rep.put("regulars", std::to_string(res.regulars));
  rep.put("min_fold_alignment", res.min_fold_alignment);
  rep.put("max_blowdown_leak", res.max_blowdown_leak);
  rep.put("min_fold_det_slope", res.min_fold_det_slope);
  rep.put("min_positivity", res.min_positivity);
  rep.put("max_center_error", res.max_center_error);

  rep.put_check("det_fd_within_tol", res.max_det_fd_error <= cfg.tol_det_fd);
  rep.put_check("det_pair_within_tol", res.max_det_pair_error <= cfg.tol_det_pair);
  rep.put_check("det_closed_within_tol",
                res.max_det_closed_error <= cfg.tol_det_pair);
  rep.put_check("verdicts_correct", verdicts_ok);
  rep.put_check("fold_kernel_aligned",
                res.min_fold_alignment >= 1.0 - cfg.tol_kernel);
  rep.put_check("blowdown_kernel_tangent", res.max_blowdown_leak <= cfg.tol_kernel);
  rep.put_check("fold_det_slope_nonzero", res.min_fold_det_slope > 0.0);
  rep.put_check("positivity_strict", res.min_positivity > 0.0);
  rep.put_check("positivity_center_value", res.max_center_error <= 1e-12);
  res.passed = rep.passed();
  return res;
}

SelftestResult run_selftest(const RunConfig& cfg, const SelftestParams& params) {
  SelftestResult res;
  const SinogramGrid sino_grid = cfg.sinogram_grid();

  for (int k = 0; k < params.adjoint_seeds; ++k)
    res.max_adjoint_discrepancy = std::max(
        res.max_adjoint_discrepancy,
        dot_product_test(cfg.geometry, cfg.scene_grid, sino_grid, cfg.pulse,
                         params.seed + static_cast<std::uint64_t>(k)));

  res.max_phase_gradient_error =
      check_phase_gradients(cfg.geometry, params.phase_samples, params.seed);

  VerificationReport& rep = res.report;
  stamp(rep, cfg, "selftest");
  rep.put("adjoint_seeds", std::to_string(params.adjoint_seeds));
  rep.put("phase_samples", std::to_string(params.phase_samples));
  rep.put("seed", std::to_string(params.seed));
  rep.put("tol_adjoint", cfg.tol_adjoint);
  rep.put("tol_phase", cfg.tol_phase);
  rep.put("max_adjoint_discrepancy", res.max_adjoint_discrepancy);
  rep.put("max_phase_gradient_error", res.max_phase_gradient_error);
  rep.put_check("adjoint_within_tol",
                res.max_adjoint_discrepancy <= cfg.tol_adjoint);
  rep.put_check("phase_gradients_within_tol",
                res.max_phase_gradient_error <= cfg.tol_phase);
  res.passed = rep.passed();
  return res;
}

}  // namespace bsar
