#pragma once

#include <string>
#include <utility>
#include <vector>

namespace skewflow {

/// A member of the gauge class: R : R+ -> R+ nondecreasing, R(0) = 0 and
/// R(t) > 0 for t > 0. Three shapes are supported: identity, t^p, and a
/// piecewise-linear table through (0, 0) extended with its last slope.
class MonotoneGauge {
 public:
  enum class Kind { identity, power, table };

  static MonotoneGauge identity();
  static MonotoneGauge power(double p);
  /// Points must start at (0, 0), have strictly increasing abscissae,
  /// nondecreasing values, and a positive value at the second point.
  static MonotoneGauge table(std::vector<std::pair<double, double>> points);

  double operator()(double t) const;

  /// Smallest t with R(t) = y. Closed form for identity/power, bisection for
  /// tables. Throws InputError when R is not strictly increasing.
  double inverse(double y) const;

  bool strictly_increasing() const noexcept;
  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return p_; }
  const std::vector<std::pair<double, double>>& points() const noexcept { return points_; }
  std::string describe() const;

 private:
  MonotoneGauge(Kind kind, double p, std::vector<std::pair<double, double>> points);

  Kind kind_;
  double p_ = 1.0;
  std::vector<std::pair<double, double>> points_;
};

}  // namespace skewflow
