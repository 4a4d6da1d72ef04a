#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/builtins.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/system.hpp"

namespace skewflow::testing {

inline Eigen::MatrixXd scalar(double a) { return Eigen::MatrixXd::Constant(1, 1, a); }

/// Phi(m, n) = 1 everywhere, integer domain.
inline SkewEvolutionSystem identity_system(int dim = 1) {
  return from_steps("identity", {Eigen::MatrixXd::Identity(dim, dim)}, NormKind::l1, true);
}

/// Constant one-step factor diag(e^{r_i}).
inline SkewEvolutionSystem diagonal_rates(const std::vector<double>& rates) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(rates.size()));
  for (std::size_t i = 0; i < rates.size(); ++i) d(static_cast<Eigen::Index>(i)) = std::exp(rates[i]);
  return from_steps("diag", {Eigen::MatrixXd(d.asDiagonal())}, NormKind::l1, true);
}

inline Horizon integer_horizon(const SkewEvolutionSystem& system, int n_max = 50,
                               std::vector<StatePoint> states = {{0.0}}) {
  HorizonSpec spec;
  spec.n_max = n_max;
  spec.states = std::move(states);
  return make_horizon(system, spec);
}

}  // namespace skewflow::testing
