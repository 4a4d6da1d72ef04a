#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/linear_operator.hpp"
#include "skewflow/norms.hpp"

namespace skewflow {

/// A point of the base space X. Every built-in family parameterizes X by one
/// nonnegative real: the point itself for X = R+, or the shift u with x = f_u
/// for the shifted-function family.
struct StatePoint {
  double value = 0.0;

  friend bool operator==(const StatePoint&, const StatePoint&) = default;
};

/// (t, s) with t >= s >= 0.
struct TimePair {
  double t = 0.0;
  double s = 0.0;
};

/// (t, s, t0) with t >= s >= t0 >= 0.
struct TimeTriple {
  double t = 0.0;
  double s = 0.0;
  double t0 = 0.0;
};

/// Systems built from one-step matrices only exist at integer times.
enum class TimeDomain { continuous, integer };

/// x -> P(x), a projection on the fibre over x.
using ProjectorMap = std::function<Eigen::MatrixXd(const StatePoint&)>;

/// C = (phi, Phi): an evolution semiflow on X together with an evolution
/// cocycle over it, acting on V = (R^d, norm).
///
/// Instances are immutable and cheap to copy; the definition is shared.
/// shift() composes by adding rates, so the scale factor of any chain of
/// shifts is a single exp(-lambda_total (t - s)).
class SkewEvolutionSystem {
 public:
  using Semiflow = std::function<StatePoint(double t, double s, const StatePoint& x)>;
  using Cocycle = std::function<Eigen::MatrixXd(double t, double s, const StatePoint& x)>;
  using StateCheck = std::function<bool(const StatePoint& x)>;

  struct Definition {
    std::string name;
    int dim = 1;
    NormKind norm = NormKind::l1;
    TimeDomain domain = TimeDomain::continuous;
    Semiflow semiflow;
    Cocycle cocycle;
    StateCheck valid_state;  // optional; defaults to "finite and >= 0"
  };

  explicit SkewEvolutionSystem(Definition definition);

  const std::string& name() const noexcept { return def_->name; }
  int dim() const noexcept { return def_->dim; }
  NormKind norm_kind() const noexcept { return norm_; }
  TimeDomain domain() const noexcept { return def_->domain; }
  double shift_rate() const noexcept { return lambda_; }

  /// Phi(t, s, x). Throws DomainError unless (t, s) is in T (and integral for
  /// integer-domain systems), InputError for states outside X.
  LinearOperator evaluate(double t, double s, const StatePoint& x) const;

  /// phi(t, s, x), with the same domain checks as evaluate().
  StatePoint flow(double t, double s, const StatePoint& x) const;

  bool is_valid_state(const StatePoint& x) const;

  /// Same system measured in another norm.
  SkewEvolutionSystem with_norm(NormKind norm) const;

  friend SkewEvolutionSystem shift(const SkewEvolutionSystem& system, double lambda);

 private:
  void check_times(double t, double s) const;
  void check_state(const StatePoint& x) const;

  std::shared_ptr<const Definition> def_;
  NormKind norm_;
  double lambda_ = 0.0;
};

/// Phi_lambda(t, t0, x) = exp(-lambda (t - t0)) Phi(t, t0, x).
SkewEvolutionSystem shift(const SkewEvolutionSystem& system, double lambda);

/// Max relative violation of P(phi(t,s,x)) Phi(t,s,x) = Phi(t,s,x) P(x).
struct InvarianceReport {
  double max_residual = 0.0;
  TimePair worst_times{};
  StatePoint worst_state{};
  bool passed = true;
};

InvarianceReport invariance_residual(const SkewEvolutionSystem& system, const ProjectorMap& projector,
                                     std::span<const TimePair> grid, std::span<const StatePoint> states,
                                     double tolerance = 1e-9);

/// C_P with cocycle Phi(t, t0, x) P(x). The projector is checked for
/// invariance on (grid x states) first; a violation throws InputError naming
/// the worst (t, s, x) and its residual.
SkewEvolutionSystem restrict_to(const SkewEvolutionSystem& system, ProjectorMap projector,
                                std::span<const TimePair> grid, std::span<const StatePoint> states,
                                double tolerance = 1e-9);

/// Integer pairs (t, s) with 0 <= s <= t <= n_max.
std::vector<TimePair> integer_pairs(int n_max);

/// A projector that does not depend on the base point.
ProjectorMap constant_projector(Eigen::MatrixXd p);

bool is_integer_time(double t) noexcept;

}  // namespace skewflow
