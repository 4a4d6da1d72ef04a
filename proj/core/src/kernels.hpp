#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ratio_table.hpp"
#include "skewflow/gauge.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/system.hpp"

namespace skewflow::detail {

/// Norms of the sampled trajectories that start at time `start` from one
/// state. norms[j][k - start] = ||Phi(k, start, x) w_j|| for k = start..n_max,
/// where w_j = P(x) v_j when a projector is attached. Vectors whose projection
/// vanishes have an empty row.
struct OrbitBundle {
  int start = 0;
  int state_index = 0;
  std::vector<std::vector<double>> norms;
};

/// One-step operators A_k = Phi(k+1, k, phi(k, start, x)), k = start..end-1.
std::vector<Eigen::MatrixXd> one_step_operators(const SkewEvolutionSystem& system, int start, int end,
                                                const StatePoint& x);

void for_each_orbit(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                    const std::function<void(const OrbitBundle&)>& visit);

/// exp(log_weight) * num / den evaluated in log space. +inf for a zero
/// denominator under a nonzero numerator, NaN when both vanish.
double weighted_ratio(double log_weight, double num, double den);

enum class Orientation { forward, backward };
enum class CoefficientIndex { anchor, start };

/// Pointwise inequalities over n <= p <= m (p = n when pinned):
///   forward : e^{rate (m-p)} ||Phi(m,n)w|| / ||Phi(p,n)w||, anchored at p
///   backward: e^{rate (m-p)} ||Phi(p,n)w|| / ||Phi(m,n)w||, anchored at m
struct PointwiseSpec {
  std::string criterion;
  double rate = 0.0;
  Orientation orientation = Orientation::forward;
  bool pin_start = true;
  CoefficientIndex coefficient = CoefficientIndex::anchor;
};

RatioTable pointwise_table(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                           const PointwiseSpec& spec);

/// Summation inequalities over n <= p <= m (p = n when pinned):
///   forward : sum_{k=p}^{m} R(e^{rate (k-p)} ||Phi(k,n)w||) / R(||Phi(p,n)w||), anchored at p
///   backward: R^{-1}(sum_{k=p}^{m} R(e^{rate (m-k)} ||Phi(k,n)w||)) / ||Phi(m,n)w||, anchored at m
struct SumSpec {
  std::string criterion;
  double rate = 0.0;
  Orientation orientation = Orientation::forward;
  bool pin_start = true;
  CoefficientIndex coefficient = CoefficientIndex::anchor;
  MonotoneGauge gauge = MonotoneGauge::identity();
};

RatioTable sum_table(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                     const SumSpec& spec);

/// sum_{k=n}^{m} R(e^{gamma (m-k)} ||Phi(m,k,phi(k,n,x))^* v^*||) / R(||v^*||), anchored at n.
RatioTable adjoint_table(const SkewEvolutionSystem& system, const Horizon& horizon, const MonotoneGauge& gauge,
                         double gamma, const std::string& criterion);

}  // namespace skewflow::detail
