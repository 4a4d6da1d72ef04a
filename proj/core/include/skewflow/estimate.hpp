#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skewflow/certificate.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/system.hpp"

namespace skewflow {

enum class Direction { stable, instable };
std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

struct ExponentSearch {
  double lo = 1e-3;
  double hi = 10.0;
  double tolerance = 1e-4;
  /// Trend factor used while probing. A value just above 1 makes the verdict
  /// switch exactly at the sampled rate instead of somewhere past it.
  double sharp_factor = 1.0 + 1e-9;
  int probes = 9;  // evenly spaced monotonicity probes over [lo, hi]
};

struct ExponentEstimate {
  Direction direction = Direction::stable;
  double value = 0.0;  // largest exponent with a holding certificate
  bool found = false;
  bool saturated = false;  // the certificate still holds at search.hi
  std::vector<std::pair<double, Verdict>> probes;
  std::string note;
};

/// Bisection for the supremum of mu with es_certificate (stable) or
/// eis_certificate (instable) holding. Throws InputError for an empty or
/// nonpositive interval and InconsistencyError when the probed verdicts are
/// not monotone in the exponent.
ExponentEstimate estimate_exponent(const SkewEvolutionSystem& system, Direction direction, const Horizon& horizon,
                                   const ExponentSearch& search = {});

}  // namespace skewflow
