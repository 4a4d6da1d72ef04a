#include "skewflow/trend.hpp"

#include <cmath>
#include <limits>

namespace skewflow {

double lag_growth(const std::vector<double>& lags) {
  const int span = static_cast<int>(lags.size()) - 1;
  const int half = span / 2;
  double g_half = -1.0;
  double g_full = -1.0;
  for (int l = 0; l <= span; ++l) {
    const double r = lags[static_cast<std::size_t>(l)];
    if (std::isnan(r)) continue;
    if (l <= half && r > g_half) g_half = r;
    if (r > g_full) g_full = r;
  }
  if (g_full < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (!std::isfinite(g_full)) return std::numeric_limits<double>::infinity();
  if (g_half > 0.0) return g_full / g_half;
  return g_full > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

TrendSummary lag_trend_test(const std::vector<std::vector<double>>& profile, int n_max, double factor) {
  TrendSummary out;
  out.factor = factor;
  const int min_span = (n_max + 1) / 2;
  for (std::size_t a = 0; a < profile.size(); ++a) {
    const int span = static_cast<int>(profile[a].size()) - 1;
    if (span < min_span || span < 1) continue;
    const double growth = lag_growth(profile[a]);
    if (std::isnan(growth)) continue;
    ++out.tested_anchors;
    if (out.worst_anchor < 0 || growth > out.worst_growth) {
      out.worst_growth = growth;
      out.worst_anchor = static_cast<int>(a);
    }
  }
  out.bounded = out.worst_growth <= factor;
  return out;
}

}  // namespace skewflow
