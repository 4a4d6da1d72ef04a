#pragma once

#include <cstdint>
#include <random>

namespace skewflow {

/// Seeded source of uniform doubles that is bit-identical across standard
/// libraries: std::mt19937_64 output is fully specified, the distribution
/// classes are not, so the conversion to [0, 1) is done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace skewflow
