#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewflow/certificate.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/system.hpp"

namespace skewflow {

enum class EnvelopeDirection { growth, decay };
std::string to_string(EnvelopeDirection d);

/// growth: ||Phi(t,t0,x)v|| <= M(s) e^{omega(s)(t-s)} ||Phi(s,t0,x)v||, indexed by s.
/// decay:  ||Phi(s,t0,x)v|| <= M(t) e^{omega(t)(t-s)} ||Phi(t,t0,x)v||, indexed by t.
struct EnvelopeBound {
  EnvelopeDirection direction = EnvelopeDirection::growth;
  std::vector<double> M;
  std::vector<double> omega;
  bool found = true;
  std::optional<Witness> witness;

  double max_omega() const;
  double max_M() const;
};

/// Rates are searched on the grid 2^{j/4}, j = -40..40, and refined by
/// bisection: for every index with a long enough lag range the smallest rate
/// is taken after which the rescaled ratios stop growing along the lag. Shorter
/// ranges reuse the rate of the nearest tested index. Throws InputError for an
/// invalid horizon.
EnvelopeBound fit_growth(const SkewEvolutionSystem& system, const Horizon& horizon);
EnvelopeBound fit_decay(const SkewEvolutionSystem& system, const Horizon& horizon);

/// Same, along trajectories kept inside the range of an invariant projector.
EnvelopeBound fit_growth(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& projector);
EnvelopeBound fit_decay(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& projector);

}  // namespace skewflow
