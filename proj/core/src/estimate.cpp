#include "skewflow/estimate.hpp"

#include <cmath>
#include <sstream>

#include "skewflow/errors.hpp"
#include "skewflow/stability.hpp"

namespace skewflow {

std::string to_string(Direction d) { return d == Direction::stable ? "stable" : "instable"; }

Direction parse_direction(const std::string& text) {
  if (text == "stable") return Direction::stable;
  if (text == "instable" || text == "unstable") return Direction::instable;
  throw InputError("unknown direction '" + text + "' (expected stable or instable)");
}

ExponentEstimate estimate_exponent(const SkewEvolutionSystem& system, Direction direction, const Horizon& horizon,
                                   const ExponentSearch& search) {
  if (!(search.lo > 0.0) || !(search.hi > search.lo) || !std::isfinite(search.hi)) {
    throw InputError("exponent search needs 0 < lo < hi");
  }
  if (!(search.tolerance > 0.0)) throw InputError("exponent search tolerance must be > 0");
  if (search.probes < 2) throw InputError("exponent search needs at least two probes");
  if (!(search.sharp_factor >= 1.0)) throw InputError("sharp factor must be >= 1");

  Horizon sharp = horizon;
  sharp.trend_factor = search.sharp_factor;
  auto verdict = [&](double mu) {
    const Certificate c = direction == Direction::stable ? es_certificate(system, mu, sharp)
                                                         : eis_certificate(system, mu, sharp);
    return c.verdict;
  };

  ExponentEstimate out;
  out.direction = direction;
  double last_hold = -1.0;
  double first_fail = -1.0;
  for (int i = 0; i < search.probes; ++i) {
    const double mu = search.lo + (search.hi - search.lo) * i / (search.probes - 1);
    const Verdict v = verdict(mu);
    out.probes.emplace_back(mu, v);
    if (v == Verdict::holds) {
      if (first_fail >= 0.0) {
        std::ostringstream os;
        os << "certificate holds at mu=" << mu << " but fails at the smaller mu=" << first_fail;
        throw InconsistencyError(os.str());
      }
      last_hold = mu;
    } else if (first_fail < 0.0) {
      first_fail = mu;
    }
  }

  if (last_hold < 0.0) {
    out.found = false;
    out.value = 0.0;
    out.note = "no positive exponent";
    return out;
  }
  out.found = true;
  if (first_fail < 0.0) {
    out.saturated = true;
    out.value = search.hi;
    out.note = "certificate holds on the whole search interval";
    return out;
  }
  double lo = last_hold;
  double hi = first_fail;
  while (hi - lo > search.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const Verdict v = verdict(mid);
    out.probes.emplace_back(mid, v);
    (v == Verdict::holds ? lo : hi) = mid;
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace skewflow
