#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skewflow/certificate.hpp"
#include "skewflow/horizon.hpp"

namespace skewflow::detail {

/// Anchor/lag bookkeeping. forward: the anchor is the earlier time and lags
/// run up to n_max - anchor. backward: the anchor is the later time and lags
/// run back to 0.
enum class Anchoring { forward, backward };

struct SampleRef {
  std::array<int, 3> times{};  // labelled by the table's time names
  int state = 0;
  int vector = 0;
};

class RatioTable {
 public:
  RatioTable(std::string criterion, int n_max, Anchoring anchoring, std::vector<std::string> time_names);

  /// Takes log(ratio). NaN is ignored; +inf marks a degenerate sample.
  void record(int anchor, int lag, int coefficient_index, double log_ratio, const SampleRef& ref);

  Certificate finish(double exponent, bool clip_at_one, double trend_factor, const Horizon& horizon,
                     bool dual_samples) const;

  /// log of the largest ratio per (anchor, lag); NaN where nothing was sampled.
  const std::vector<std::vector<double>>& log_profile() const noexcept { return profile_; }
  const SampleRef* best_ref(int anchor, int lag) const;
  int n_max() const noexcept { return n_max_; }
  Anchoring anchoring() const noexcept { return anchoring_; }

 private:
  Witness make_witness(const SampleRef& ref, double measured, std::string reason, const Horizon& horizon,
                       bool dual_samples) const;

  std::string criterion_;
  int n_max_;
  Anchoring anchoring_;
  std::vector<std::string> time_names_;
  std::vector<std::vector<double>> profile_;
  std::vector<std::vector<std::optional<SampleRef>>> refs_;
  std::vector<double> coefficient_;
  std::optional<SampleRef> degenerate_;
};

}  // namespace skewflow::detail
