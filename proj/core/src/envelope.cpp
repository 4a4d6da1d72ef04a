#include "skewflow/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kernels.hpp"
#include "skewflow/trend.hpp"

namespace skewflow {

namespace {

constexpr int kGridLo = -40;
constexpr int kGridHi = 40;
constexpr double kSharp = 1.0 + 1e-9;
constexpr int kRefineSteps = 40;

double grid_rate(int j) { return std::exp2(j / 4.0); }

bool passes(const std::vector<double>& lags, double omega) {
  std::vector<double> scaled(lags.size());
  for (std::size_t l = 0; l < lags.size(); ++l) {
    scaled[l] = std::exp(lags[l] - omega * static_cast<double>(l));
  }
  const double g = lag_growth(scaled);
  return std::isnan(g) || g <= kSharp;
}

/// Smallest rate on the grid (then bisected) for which the rescaled row stops
/// growing; NaN when even the largest grid rate fails.
double smallest_rate(const std::vector<double>& lags) {
  if (passes(lags, grid_rate(kGridLo))) return grid_rate(kGridLo);
  int j = kGridLo + 1;
  while (j <= kGridHi && !passes(lags, grid_rate(j))) ++j;
  if (j > kGridHi) return std::numeric_limits<double>::quiet_NaN();
  double lo = grid_rate(j - 1);
  double hi = grid_rate(j);
  for (int i = 0; i < kRefineSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    (passes(lags, mid) ? hi : lo) = mid;
  }
  return hi;
}

EnvelopeBound fit(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                  EnvelopeDirection direction) {
  const bool growth = direction == EnvelopeDirection::growth;
  detail::PointwiseSpec spec{growth ? "growth" : "decay", 0.0,
                             growth ? detail::Orientation::forward : detail::Orientation::backward, false,
                             detail::CoefficientIndex::anchor};
  const detail::RatioTable table = detail::pointwise_table(system, horizon, projector, spec);
  const auto& profile = table.log_profile();
  const int n_max = horizon.n_max;
  const int min_span = (n_max + 1) / 2;
  const auto size = static_cast<std::size_t>(n_max + 1);

  EnvelopeBound env;
  env.direction = direction;
  env.M.assign(size, 1.0);
  env.omega.assign(size, std::numeric_limits<double>::quiet_NaN());

  auto fail_at = [&](int anchor, const char* why) {
    env.found = false;
    const auto& lags = profile[static_cast<std::size_t>(anchor)];
    int best_lag = 0;
    for (std::size_t l = 0; l < lags.size(); ++l) {
      if (!std::isnan(lags[l]) && (std::isnan(lags[static_cast<std::size_t>(best_lag)]) ||
                                   lags[l] > lags[static_cast<std::size_t>(best_lag)])) {
        best_lag = static_cast<int>(l);
      }
    }
    if (const detail::SampleRef* ref = table.best_ref(anchor, best_lag)) {
      Witness w;
      w.indices = {{"t", ref->times[0]}, {"s", ref->times[1]}, {"t0", ref->times[2]}};
      w.state = horizon.states[static_cast<std::size_t>(ref->state)];
      w.vector = horizon.vectors[static_cast<std::size_t>(ref->vector)];
      w.measured = std::exp(lags[static_cast<std::size_t>(best_lag)]);
      w.reason = why;
      env.witness = w;
    }
  };

  for (int a = 0; a <= n_max; ++a) {
    const auto& lags = profile[static_cast<std::size_t>(a)];
    for (double r : lags) {
      if (r == std::numeric_limits<double>::infinity()) {
        fail_at(a, "degenerate: a trajectory vanishes and reappears");
        return env;
      }
    }
    const int span = static_cast<int>(lags.size()) - 1;
    if (span < min_span) continue;
    const double w = smallest_rate(lags);
    if (std::isnan(w)) {
      fail_at(a, "no rate on the search grid bounds the ratios");
      return env;
    }
    env.omega[static_cast<std::size_t>(a)] = w;
  }

  // Indices with short lag ranges borrow the rate of the nearest tested index.
  const std::vector<double> tested = env.omega;
  for (int a = 0; a <= n_max; ++a) {
    if (!std::isnan(tested[static_cast<std::size_t>(a)])) continue;
    double borrowed = grid_rate(kGridLo);
    for (int d = 1; d <= n_max; ++d) {
      if (a - d >= 0 && !std::isnan(tested[static_cast<std::size_t>(a - d)])) {
        borrowed = tested[static_cast<std::size_t>(a - d)];
        break;
      }
      if (a + d <= n_max && !std::isnan(tested[static_cast<std::size_t>(a + d)])) {
        borrowed = tested[static_cast<std::size_t>(a + d)];
        break;
      }
    }
    env.omega[static_cast<std::size_t>(a)] = borrowed;
  }

  for (int a = 0; a <= n_max; ++a) {
    const auto& lags = profile[static_cast<std::size_t>(a)];
    const double w = env.omega[static_cast<std::size_t>(a)];
    double m = 1.0;
    for (std::size_t l = 0; l < lags.size(); ++l) {
      if (!std::isnan(lags[l])) m = std::max(m, std::exp(lags[l] - w * static_cast<double>(l)));
    }
    env.M[static_cast<std::size_t>(a)] = m;
  }
  return env;
}

}  // namespace

std::string to_string(EnvelopeDirection d) { return d == EnvelopeDirection::growth ? "growth" : "decay"; }

double EnvelopeBound::max_omega() const {
  double best = 0.0;
  for (double w : omega)
    if (!std::isnan(w)) best = std::max(best, w);
  return best;
}

double EnvelopeBound::max_M() const {
  double best = 0.0;
  for (double m : M)
    if (!std::isnan(m)) best = std::max(best, m);
  return best;
}

EnvelopeBound fit_growth(const SkewEvolutionSystem& system, const Horizon& horizon) {
  return fit(system, horizon, nullptr, EnvelopeDirection::growth);
}

EnvelopeBound fit_decay(const SkewEvolutionSystem& system, const Horizon& horizon) {
  return fit(system, horizon, nullptr, EnvelopeDirection::decay);
}

EnvelopeBound fit_growth(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& projector) {
  return fit(system, horizon, &projector, EnvelopeDirection::growth);
}

EnvelopeBound fit_decay(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& projector) {
  return fit(system, horizon, &projector, EnvelopeDirection::decay);
}

}  // namespace skewflow
