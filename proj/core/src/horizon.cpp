#include "skewflow/horizon.hpp"

#include <string>

#include "skewflow/errors.hpp"
#include "skewflow/random.hpp"

namespace skewflow {

void Horizon::validate(int dim) const {
  if (n_max < 2) throw InputError("horizon n_max must be >= 2, got " + std::to_string(n_max));
  if (states.empty()) throw InputError("horizon needs at least one state sample");
  if (vectors.empty() || dual_vectors.empty()) throw InputError("horizon needs at least one vector sample");
  for (const auto& v : vectors)
    if (v.size() != dim) throw InputError("horizon vector has dimension " + std::to_string(v.size()));
  for (const auto& v : dual_vectors)
    if (v.size() != dim) throw InputError("horizon dual vector has dimension " + std::to_string(v.size()));
  if (!(trend_factor >= 1.0)) throw InputError("trend factor must be >= 1");
}

Horizon make_horizon(const SkewEvolutionSystem& system, const HorizonSpec& spec) {
  const int dim = system.dim();
  std::vector<Eigen::VectorXd> raw = spec.vectors;
  if (raw.empty()) {
    for (int i = 0; i < dim; ++i) {
      raw.push_back(Eigen::VectorXd::Unit(dim, i));
      raw.push_back(-Eigen::VectorXd::Unit(dim, i));
    }
    Rng rng(spec.seed);
    for (int k = 0; k < spec.random_vectors; ++k) {
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
      raw.push_back(v);
    }
  }
  Horizon h;
  h.n_max = spec.n_max;
  h.states = spec.states;
  h.trend_factor = spec.trend_factor;
  h.propagation = spec.propagation;
  for (const auto& v : raw) {
    if (v.size() != dim) throw InputError("sample vector has dimension " + std::to_string(v.size()));
    h.vectors.push_back(normalized(v, system.norm_kind()));
    h.dual_vectors.push_back(normalized(v, dual(system.norm_kind())));
  }
  for (const StatePoint& x : h.states) {
    if (!system.is_valid_state(x)) throw InputError("sample state is not a point of the base space");
  }
  h.validate(dim);
  return h;
}

}  // namespace skewflow
