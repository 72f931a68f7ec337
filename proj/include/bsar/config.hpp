// Run configuration: every knob of the toolkit in one value, parseable from a
// `key = value` text file, overridable one key at a time, and hashable so
// that reports can state exactly which configuration produced them.
#pragma once

#include <cstdint>
#include <string>

#include "bsar/geometry.hpp"
#include "bsar/operators.hpp"

namespace bsar {

struct RunConfig {
  AcquisitionGeometry geometry;
  SceneGrid scene_grid;
  int sino_ns = 64;
  int sino_nt = 128;
  Pulse pulse;
  std::uint64_t seed = 1;
  std::string outdir = "out";

  double tol_identity = 1e-8;
  double tol_identity3 = 1e-14;
  double tol_det_fd = 1e-6;
  double tol_det_pair = 1e-10;
  double tol_kernel = 1e-8;
  double tol_phase = 1e-6;
  double tol_adjoint = 1e-12;

  /// The stock configuration: unit antenna offset and height, slow-time
  /// window (-2, 2), fast-time window (2, 9), a 64x64 scene on
  /// [-1.5, 1.5]^2, a 64x128 sinogram, and a Ricker pulse whose band fits
  /// the fast-time sampling budget.
  static RunConfig defaults();

  /// Parses a `key = value` file (UTF-8, `#` comments) over the defaults.
  /// Throws std::invalid_argument naming the offending line.
  static RunConfig from_file(const std::string& path);

  /// Applies one key=value override.  Throws std::invalid_argument for
  /// unknown keys or unparseable values.
  void apply(const std::string& key, const std::string& value);

  /// Cross-checks every invariant of the assembled configuration.
  void validate() const;

  /// The sinogram sampling this configuration asks for.
  SinogramGrid sinogram_grid() const;

  /// Sorted key=value rendering of every field, at full precision.
  std::string canonical_text() const;

  /// FNV-1a 64-bit hash of canonical_text(), printed as 16 hex digits.
  std::string hash() const;
};

}  // namespace bsar
