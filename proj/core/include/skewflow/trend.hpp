#pragma once

#include <vector>

#include "skewflow/certificate.hpp"

namespace skewflow {

/// Boundedness test for a family of finite-horizon fits.
///
/// profile[a][l] is the largest sampled ratio for anchor a at lag l (NaN when
/// nothing was sampled). For every anchor whose lag span reaches at least
/// ceil(n_max / 2), the running maximum over all lags must not exceed `factor`
/// times the running maximum over the first half of its lags. A divergent
/// inequality shows up as growth along the lag; a nonuniform but bounded
/// coefficient sequence may still grow with the anchor, which is allowed.
TrendSummary lag_trend_test(const std::vector<std::vector<double>>& profile, int n_max, double factor);

/// Running max over all lags divided by the running max over the first half
/// (NaN entries skipped). +inf when the second half is infinite or the first
/// half is identically zero while the second is not; NaN without samples.
double lag_growth(const std::vector<double>& lags);

}  // namespace skewflow
