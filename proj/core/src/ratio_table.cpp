#include "ratio_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewflow/trend.hpp"

namespace skewflow {

std::string to_string(Verdict v) { return v == Verdict::holds ? "holds" : "fails"; }

double Certificate::sup_coefficient() const {
  double best = 0.0;
  for (double c : coefficients) {
    if (std::isnan(c)) continue;
    best = std::max(best, c);
  }
  return best;
}

namespace detail {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

RatioTable::RatioTable(std::string criterion, int n_max, Anchoring anchoring, std::vector<std::string> time_names)
    : criterion_(std::move(criterion)),
      n_max_(n_max),
      anchoring_(anchoring),
      time_names_(std::move(time_names)),
      profile_(static_cast<std::size_t>(n_max + 1)),
      refs_(static_cast<std::size_t>(n_max + 1)),
      coefficient_(static_cast<std::size_t>(n_max + 1), kNaN) {
  for (int a = 0; a <= n_max; ++a) {
    const int span = anchoring == Anchoring::forward ? n_max - a : a;
    profile_[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(span + 1), kNaN);
    refs_[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(span + 1));
  }
}

void RatioTable::record(int anchor, int lag, int coefficient_index, double log_ratio, const SampleRef& ref) {
  if (std::isnan(log_ratio)) return;
  auto& slot = profile_[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(lag)];
  if (std::isnan(slot) || log_ratio > slot) {
    slot = log_ratio;
    refs_[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(lag)] = ref;
  }
  auto& c = coefficient_[static_cast<std::size_t>(coefficient_index)];
  if (std::isnan(c) || log_ratio > c) c = log_ratio;
  if (log_ratio == std::numeric_limits<double>::infinity() && !degenerate_) degenerate_ = ref;
}

const SampleRef* RatioTable::best_ref(int anchor, int lag) const {
  const auto& r = refs_[static_cast<std::size_t>(anchor)][static_cast<std::size_t>(lag)];
  return r ? &*r : nullptr;
}

Witness RatioTable::make_witness(const SampleRef& ref, double measured, std::string reason, const Horizon& horizon,
                                 bool dual_samples) const {
  Witness w;
  for (std::size_t i = 0; i < time_names_.size() && i < ref.times.size(); ++i) {
    w.indices.emplace_back(time_names_[i], ref.times[i]);
  }
  w.state = horizon.states[static_cast<std::size_t>(ref.state)];
  const auto& vs = dual_samples ? horizon.dual_vectors : horizon.vectors;
  w.vector = vs[static_cast<std::size_t>(ref.vector)];
  w.measured = measured;
  w.reason = std::move(reason);
  return w;
}

Certificate RatioTable::finish(double exponent, bool clip_at_one, double trend_factor, const Horizon& horizon,
                               bool dual_samples) const {
  Certificate cert;
  cert.criterion = criterion_;
  cert.exponent = exponent;
  cert.max_ratio.resize(coefficient_.size());
  for (std::size_t i = 0; i < coefficient_.size(); ++i) cert.max_ratio[i] = std::exp(coefficient_[i]);
  cert.coefficients = cert.max_ratio;
  if (clip_at_one) {
    for (double& c : cert.coefficients)
      if (!std::isnan(c)) c = std::max(c, 1.0);
  }
  std::vector<std::vector<double>> ratios = profile_;
  for (auto& row : ratios)
    for (double& r : row) r = std::exp(r);
  cert.trend = lag_trend_test(ratios, n_max_, trend_factor);

  if (degenerate_) {
    cert.verdict = Verdict::fails;
    cert.degenerate = true;
    cert.witness = make_witness(*degenerate_, std::numeric_limits<double>::infinity(),
                                "degenerate: the reference norm vanishes while the compared norm does not",
                                horizon, dual_samples);
    return cert;
  }
  cert.verdict = cert.trend.bounded ? Verdict::holds : Verdict::fails;
  if (!cert.trend.bounded && cert.trend.worst_anchor >= 0) {
    const auto& lags = profile_[static_cast<std::size_t>(cert.trend.worst_anchor)];
    int best_lag = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < lags.size(); ++l) {
      if (!std::isnan(lags[l]) && lags[l] >= best) {
        best = lags[l];
        best_lag = static_cast<int>(l);
      }
    }
    if (const SampleRef* ref = best_ref(cert.trend.worst_anchor, best_lag)) {
      std::ostringstream os;
      os << "divergence: at anchor " << cert.trend.worst_anchor << " the fitted ratio grows by "
         << cert.trend.worst_growth << " over the second half of the lags (limit " << trend_factor << ")";
      cert.witness = make_witness(*ref, std::exp(best), os.str(), horizon, dual_samples);
    }
  }
  return cert;
}

}  // namespace detail
}  // namespace skewflow
