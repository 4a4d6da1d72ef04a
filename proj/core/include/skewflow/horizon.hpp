#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/system.hpp"

namespace skewflow {

/// How trajectories k -> Phi(k, n, x) w are produced on the integer grid.
///  stepped: Phi(k+1, n, x) w = Phi(k+1, k, phi(k, n, x)) Phi(k, n, x) w, with
///           the projector re-applied after every step when one is attached.
///  direct:  every Phi(k, n, x) is evaluated on its own.
enum class Propagation { stepped, direct };

/// Finite sample of the quantifiers "for all (m, n) in Delta and all (x, v)".
struct Horizon {
  int n_max = 50;
  std::vector<StatePoint> states;
  std::vector<Eigen::VectorXd> vectors;       // unit in the analysis norm
  std::vector<Eigen::VectorXd> dual_vectors;  // unit in the dual norm
  double trend_factor = 10.0;
  Propagation propagation = Propagation::stepped;

  /// Throws InputError if n_max < 2, a sample list is empty, or a vector has
  /// the wrong dimension.
  void validate(int dim) const;
};

struct HorizonSpec {
  int n_max = 50;
  std::vector<StatePoint> states{{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}, {6.0}, {7.0}};
  /// When empty: the 2d signed coordinate vectors plus `random_vectors`
  /// seeded directions.
  std::vector<Eigen::VectorXd> vectors;
  int random_vectors = 8;
  std::uint64_t seed = 1;
  double trend_factor = 10.0;
  Propagation propagation = Propagation::stepped;
};

/// Builds the sample set for `system`: vectors are normalized in the system
/// norm, dual vectors are the same directions normalized in the dual norm.
Horizon make_horizon(const SkewEvolutionSystem& system, const HorizonSpec& spec = {});

}  // namespace skewflow
