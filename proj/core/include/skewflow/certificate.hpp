#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/system.hpp"

namespace skewflow {

enum class Verdict { holds, fails };

std::string to_string(Verdict v);

/// The sampled tuple at which an inequality is worst.
struct Witness {
  std::vector<std::pair<std::string, int>> indices;  // e.g. {{"m", 7}, {"n", 0}}
  StatePoint state;
  Eigen::VectorXd vector;
  double measured = 0.0;  // the ratio that has to be absorbed by the coefficient
  std::string reason;
};

/// Outcome of the lag-direction boundedness test, see trend.hpp.
struct TrendSummary {
  bool bounded = true;
  int worst_anchor = -1;
  double worst_growth = 1.0;  // running max over all lags / over the first half
  int tested_anchors = 0;
  double factor = 10.0;
};

/// Fitted constants for one inequality over a horizon.
///
/// coefficients[i] is the smallest admissible coefficient at index i (clipped
/// below at 1 when the inequality demands a_n >= 1); max_ratio[i] is the
/// unclipped value. Indices without any sample are NaN.
struct Certificate {
  std::string criterion;
  Verdict verdict = Verdict::holds;
  double exponent = 0.0;
  std::vector<double> coefficients;
  std::vector<double> max_ratio;
  std::optional<Witness> witness;
  bool degenerate = false;
  TrendSummary trend;
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::holds; }
  /// Largest finite coefficient (NaN-free), or +inf if any is infinite.
  double sup_coefficient() const;
};

}  // namespace skewflow
