// Batch verification suites: seeded random sweeps over the identity algebra,
// the projection Jacobians and their singularity classification, the
// positivity of the shared determinant factor, and the forward/adjoint pair.
// Each suite returns its worst-case metrics together with a machine-readable
// report that embeds the config hash and every tolerance used.
#pragma once

#include <array>
#include <cstdint>

#include "bsar/config.hpp"
#include "bsar/report.hpp"

namespace bsar {

struct IdentitySuiteParams {
  int samples = 10000;
  std::uint64_t seed = 7;
  /// Random geometries checked alongside the configured one.
  int extra_geometries = 10;
};

struct IdentitySuiteResult {
  /// Worst relative residual per identity (index 0 holds identity 1).
  std::array<double, 6> max_rel_residual{};
  double max_handy_residual = 0.0;
  /// Worst |direct - formula| / (1 + |direct|) of the cos(theta) difference.
  double max_cos_theta_error = 0.0;
  /// Worst relative gap between the prolate and Cartesian identity-1
  /// coefficients.
  double max_cartesian_gap = 0.0;
  /// Largest coefficient magnitude seen (boundedness witness).
  double max_coefficient = 0.0;
  bool passed = false;
  VerificationReport report;
};

IdentitySuiteResult run_identity_suite(const RunConfig& cfg,
                                       const IdentitySuiteParams& params);

struct MicrolocalSuiteParams {
  /// Determinant-agreement sample count (off the critical plane).
  int chart_samples = 1000;
  /// Verdict sample count, used both on and off the critical plane.
  int verdict_samples = 1000;
  int positivity_samples = 100000;
  std::uint64_t seed = 11;
};

struct MicrolocalSuiteResult {
  /// Worst relative gap, closed-form determinant vs finite differences.
  double max_det_fd_error = 0.0;
  /// Worst relative gap between the two analytic projection determinants.
  double max_det_pair_error = 0.0;
  /// Worst relative gap, closed form vs analytic left determinant.
  double max_det_closed_error = 0.0;
  int folds = 0;
  int blowdowns = 0;
  int regulars = 0;
  /// Smallest |kernel x2-component| over folds (should stay near 1).
  double min_fold_alignment = 1.0;
  /// Largest |kernel x2-component| over blowdowns (should stay near 0).
  double max_blowdown_leak = 0.0;
  /// Smallest |d(det)/d(x2)| over fold points (must stay away from 0).
  double min_fold_det_slope = 0.0;
  double min_positivity = 0.0;
  /// Worst |positivity_term(s,(s,0)) - 2h^2/(h^2+alpha^2)|.
  double max_center_error = 0.0;
  bool passed = false;
  VerificationReport report;
};

MicrolocalSuiteResult run_microlocal_suite(const RunConfig& cfg,
                                           const MicrolocalSuiteParams& params);

struct SelftestParams {
  int adjoint_seeds = 3;
  int phase_samples = 1000;
  std::uint64_t seed = 3;
};

struct SelftestResult {
  double max_adjoint_discrepancy = 0.0;
  double max_phase_gradient_error = 0.0;
  bool passed = false;
  VerificationReport report;
};

SelftestResult run_selftest(const RunConfig& cfg, const SelftestParams& params);

}  // namespace bsar
