#include <cmath>
#include <limits>

#include "kernels.hpp"
#include "skewflow/compensated_sum.hpp"
#include "skewflow/errors.hpp"

namespace skewflow::detail {

namespace {

constexpr double kNullProjection = 1e-12;

std::vector<std::string> time_names(bool pinned) {
  if (pinned) return {"m", "n"};
  return {"m", "p", "n"};
}

SampleRef make_ref(bool pinned, int m, int p, int n, const OrbitBundle& orbit, std::size_t j) {
  SampleRef ref;
  ref.times = pinned ? std::array<int, 3>{m, n, 0} : std::array<int, 3>{m, p, n};
  ref.state = orbit.state_index;
  ref.vector = static_cast<int>(j);
  return ref;
}

}  // namespace

double weighted_ratio(double log_weight, double num, double den) {
  if (std::isnan(num) || std::isnan(den)) return std::numeric_limits<double>::infinity();
  if (den == 0.0) return num > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  if (num == 0.0) return 0.0;
  if (std::isinf(num)) return std::numeric_limits<double>::infinity();
  if (std::isinf(den)) return 0.0;
  return std::exp(log_weight + std::log(num) - std::log(den));
}

std::vector<Eigen::MatrixXd> one_step_operators(const SkewEvolutionSystem& system, int start, int end,
                                                const StatePoint& x) {
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(static_cast<std::size_t>(std::max(0, end - start)));
  for (int k = start; k < end; ++k) {
    const StatePoint xk = system.flow(k, start, x);
    ops.push_back(system.evaluate(k + 1, k, xk).matrix());
  }
  return ops;
}

void for_each_orbit(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                    const std::function<void(const OrbitBundle&)>& visit) {
  horizon.validate(system.dim());
  const int n_max = horizon.n_max;
  const NormKind norm = system.norm_kind();
  const bool stepped = horizon.propagation == Propagation::stepped;
  OrbitBundle orbit;
  for (std::size_t si = 0; si < horizon.states.size(); ++si) {
    const StatePoint& x = horizon.states[si];
    for (int n = 0; n <= n_max; ++n) {
      orbit.start = n;
      orbit.state_index = static_cast<int>(si);
      orbit.norms.assign(horizon.vectors.size(), {});

      std::vector<Eigen::MatrixXd> ops;
      std::vector<Eigen::MatrixXd> direct;
      std::vector<Eigen::MatrixXd> projs;
      if (stepped) {
        ops = one_step_operators(system, n, n_max, x);
      } else {
        for (int k = n; k <= n_max; ++k) direct.push_back(system.evaluate(k, n, x).matrix());
      }
      if (projector) {
        for (int k = n; k <= n_max; ++k) projs.push_back((*projector)(system.flow(k, n, x)));
      }

      for (std::size_t j = 0; j < horizon.vectors.size(); ++j) {
        Eigen::VectorXd w = horizon.vectors[j];
        if (projector) {
          w = projs[0] * w;
          if (vector_norm(w, norm) <= kNullProjection * std::max(1.0, operator_norm(projs[0], norm))) continue;
        }
        auto& row = orbit.norms[j];
        row.resize(static_cast<std::size_t>(n_max - n + 1));
        row[0] = vector_norm(w, norm);
        for (int k = n + 1; k <= n_max; ++k) {
          const auto i = static_cast<std::size_t>(k - n);
          Eigen::VectorXd wk;
          if (stepped) {
            wk = ops[i - 1] * w;
            if (projector) wk = projs[i] * wk;
            w = wk;
          } else {
            wk = direct[i] * w;
            if (projector) wk = projs[i] * wk;
          }
          row[i] = vector_norm(wk, norm);
        }
      }
      visit(orbit);
    }
  }
}

RatioTable pointwise_table(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                           const PointwiseSpec& spec) {
  const int n_max = horizon.n_max;
  const bool fwd = spec.orientation == Orientation::forward;
  RatioTable table(spec.criterion, n_max, fwd ? Anchoring::forward : Anchoring::backward,
                   time_names(spec.pin_start));
  std::vector<double> ln;
  for_each_orbit(system, horizon, projector, [&](const OrbitBundle& orbit) {
    const int n = orbit.start;
    for (std::size_t j = 0; j < orbit.norms.size(); ++j) {
      const auto& nu = orbit.norms[j];
      if (nu.empty()) continue;
      ln.resize(nu.size());
      for (std::size_t i = 0; i < nu.size(); ++i)
        ln[i] = std::isnan(nu[i]) ? std::numeric_limits<double>::infinity() : std::log(nu[i]);
      const int p_last = spec.pin_start ? n : n_max;
      for (int p = n; p <= p_last; ++p) {
        const double at_p = ln[static_cast<std::size_t>(p - n)];
        for (int m = p; m <= n_max; ++m) {
          const double at_m = ln[static_cast<std::size_t>(m - n)];
          const int lag = m - p;
          const double r = spec.rate * lag + (fwd ? at_m - at_p : at_p - at_m);
          const int anchor = fwd ? p : m;
          const int coef = spec.coefficient == CoefficientIndex::anchor ? anchor : n;
          table.record(anchor, lag, coef, r, make_ref(spec.pin_start, m, p, n, orbit, j));
        }
      }
    }
  });
  return table;
}

RatioTable sum_table(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap* projector,
                     const SumSpec& spec) {
  const int n_max = horizon.n_max;
  const bool fwd = spec.orientation == Orientation::forward;
  const MonotoneGauge& R = spec.gauge;
  if (!fwd && !R.strictly_increasing()) {
    throw InputError("gauge " + R.describe() + " must be strictly increasing to fit the coefficient");
  }
  const bool homogeneous = R.kind() != MonotoneGauge::Kind::table;
  const double degree = R.kind() == MonotoneGauge::Kind::power ? R.exponent() : 1.0;
  RatioTable table(spec.criterion, n_max, fwd ? Anchoring::forward : Anchoring::backward,
                   time_names(spec.pin_start));

  auto term = [&](double log_weight, double norm) { return R(weighted_ratio(log_weight, norm, 1.0)); };

  for_each_orbit(system, horizon, projector, [&](const OrbitBundle& orbit) {
    const int n = orbit.start;
    for (std::size_t j = 0; j < orbit.norms.size(); ++j) {
      const auto& nu = orbit.norms[j];
      if (nu.empty()) continue;
      auto at = [&](int k) { return nu[static_cast<std::size_t>(k - n)]; };
      const int p_last = spec.pin_start ? n : n_max;
      for (int p = n; p <= p_last; ++p) {
        CompensatedSum sum;
        for (int m = p; m <= n_max; ++m) {
          const int lag = m - p;
          double r = 0.0;
          if (fwd) {
            sum += term(spec.rate * lag, at(m));
            r = weighted_ratio(0.0, sum.value(), R(at(p)));
          } else {
            double s = 0.0;
            if (homogeneous) {
              sum.scale(std::exp(spec.rate * degree));
              sum += term(0.0, at(m));
              s = sum.value();
            } else {
              CompensatedSum direct;
              for (int k = p; k <= m; ++k) direct += term(spec.rate * (m - k), at(k));
              s = direct.value();
            }
            r = weighted_ratio(0.0, R.inverse(s), at(m));
          }
          const int anchor = fwd ? p : m;
          const int coef = spec.coefficient == CoefficientIndex::anchor ? anchor : n;
          table.record(anchor, lag, coef, std::log(r), make_ref(spec.pin_start, m, p, n, orbit, j));
        }
      }
    }
  });
  return table;
}

RatioTable adjoint_table(const SkewEvolutionSystem& system, const Horizon& horizon, const MonotoneGauge& gauge,
                         double gamma, const std::string& criterion) {
  horizon.validate(system.dim());
  const int n_max = horizon.n_max;
  const NormKind dnorm = dual(system.norm_kind());
  const bool stepped = horizon.propagation == Propagation::stepped;
  RatioTable table(criterion, n_max, Anchoring::forward, {"m", "n"});
  std::vector<double> terms;
  for (std::size_t si = 0; si < horizon.states.size(); ++si) {
    const StatePoint& x = horizon.states[si];
    for (int n = 0; n <= n_max; ++n) {
      std::vector<Eigen::MatrixXd> ops;
      if (stepped) ops = one_step_operators(system, n, n_max, x);
      OrbitBundle orbit;
      orbit.start = n;
      orbit.state_index = static_cast<int>(si);
      for (std::size_t j = 0; j < horizon.dual_vectors.size(); ++j) {
        const Eigen::VectorXd& vstar = horizon.dual_vectors[j];
        const double base = gauge(vector_norm(vstar, dnorm));
        for (int m = n; m <= n_max; ++m) {
          terms.assign(static_cast<std::size_t>(m - n + 1), 0.0);
          Eigen::VectorXd u = vstar;
          for (int k = m; k >= n; --k) {
            double dn = 0.0;
            if (stepped) {
              if (k < m) u = ops[static_cast<std::size_t>(k - n)].transpose() * u;
              dn = vector_norm(u, dnorm);
            } else {
              const LinearOperator op = system.evaluate(m, k, system.flow(k, n, x));
              dn = adjoint_apply(op, vstar).dual_norm;
            }
            terms[static_cast<std::size_t>(k - n)] = gauge(weighted_ratio(gamma * (m - k), dn, 1.0));
          }
          CompensatedSum sum;
          for (double t : terms) sum += t;
          const double r = weighted_ratio(0.0, sum.value(), base);
          table.record(n, m - n, n, std::log(r), make_ref(true, m, n, n, orbit, j));
        }
      }
    }
  }
  return table;
}

}  // namespace skewflow::detail
