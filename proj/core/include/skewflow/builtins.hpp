#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/projectors.hpp"
#include "skewflow/system.hpp"

namespace skewflow {

/// What a fixture is expected to be, and where that expectation comes from.
struct FixtureDescriptor {
  std::string name;
  std::map<std::string, std::string> parameters;
  std::string expected;  // e.g. "exponentially stable"
  std::map<std::string, double> constants;
  std::string source;  // "worked example ..." or "generator ground truth" or "closed form"
};

struct Fixture {
  SkewEvolutionSystem system;
  FixtureDescriptor descriptor;
  std::optional<ProjectorFamily> family;
};

/// Parameters of the shifted-function family (ex_ce, ex_nuet).
///  variant: "corrected" integrates x over [0, t-s], "literal" over [0, t] as the exponent is written.
///  base:    "constant" f = l; "saturating" f(t) = l - (l - 1) e^{-t} (needs
///           l >= 1); "table" piecewise-linear through `table`, constant after
///           the last point, with l its last value.
struct BuiltinParams {
  std::string variant = "corrected";
  std::string base = "constant";
  double limit = 1.0;
  std::vector<std::pair<double, double>> table;
};

std::vector<std::string> builtin_names();

/// Throws InputError for unknown names or invalid parameters.
Fixture builtin(const std::string& name, const BuiltinParams& params = {});

/// Scalar system built from one-step factors: Phi(m, n) = A_{m-1} ... A_n.
/// With `periodic` the sequence repeats, otherwise times past its end throw
/// DomainError. Integer domain, X = R+ with phi(t, s, x) = x + t - s.
SkewEvolutionSystem from_steps(std::string name, std::vector<Eigen::MatrixXd> steps, NormKind norm = NormKind::l1,
                               bool periodic = false);

/// The base function f of the shifted-function family.
class BaseFunction {
 public:
  explicit BaseFunction(const BuiltinParams& params);
  double operator()(double t) const;
  /// int_a^b f; closed form for the constant and saturating bases, adaptive
  /// Simpson (absolute tolerance 1e-10) for tables.
  double integral(double a, double b) const;
  double limit() const noexcept { return limit_; }
  std::string describe() const;

 private:
  std::string kind_;
  double limit_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

/// Numerical check of the coefficient functions N1..N4 stated for ex_nuet
/// (with x(0) = f(u) and l the limit of f) on the given (t, s, t0) triples and
/// states. The slack is the smallest log(right side) - log(left side) over the
/// grid; an inequality validates when the slack is >= -1e-12.
struct CharacteristicCheck {
  std::string name;
  std::string inequality;
  double min_slack = 0.0;
  bool validates = true;
};
std::vector<CharacteristicCheck> check_ex_nuet_characteristics(const BuiltinParams& params,
                                                               std::span<const TimeTriple> grid,
                                                               std::span<const StatePoint> states);

}  // namespace skewflow
