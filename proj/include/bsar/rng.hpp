// Deterministic random number generation and compensated summation helpers.
#pragma once

#include <cstdint>
#include <random>

namespace bsar {

/// Seeded generator with a fixed 53-bit engine-to-double mapping, so that
/// sequences are reproducible across platforms and standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// +1.0 or -1.0 with equal probability.
  double sign() { return (engine_() & 1ull) ? 1.0 : -1.0; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t index(std::uint64_t n) {
    // Rejection-free multiply-shift; bias is negligible for the n used here
    // and the result stays reproducible.
    return static_cast<std::uint64_t>(unit() * static_cast<double>(n)) % n;
  }

private:
  std::mt19937_64 engine_;
};

/// Kahan compensated accumulator. Keeps long sequential reductions accurate
/// to a few ulps independent of term count, without changing evaluation
/// order (results stay bit-reproducible).
class KahanSum {
public:
  void add(double v) {
    const double y = v - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace bsar
