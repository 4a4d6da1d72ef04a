#include "skewflow/stability.hpp"

#include <cmath>
#include <sstream>

#include "kernels.hpp"
#include "skewflow/compensated_sum.hpp"
#include "skewflow/envelope.hpp"
#include "skewflow/errors.hpp"

namespace skewflow {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

std::string envelope_note(const EnvelopeBound& env, const char* conclusion) {
  std::ostringstream os;
  if (env.found) {
    os << conclusion << " (exponential growth fitted with max omega " << env.max_omega()
       << "); consistent with equivalence on the sampled horizon";
  } else {
    os << "sums bounded but no exponential growth envelope was found; no conclusion";
  }
  return os.str();
}

}  // namespace

Certificate es_certificate(const SkewEvolutionSystem& system, double mu, const Horizon& horizon) {
  require(mu > 0.0 && std::isfinite(mu), "mu must be > 0");
  detail::PointwiseSpec spec{"es", mu, detail::Orientation::forward, true, detail::CoefficientIndex::anchor};
  return detail::pointwise_table(system, horizon, nullptr, spec)
      .finish(mu, true, horizon.trend_factor, horizon, false);
}

Certificate eis_certificate(const SkewEvolutionSystem& system, double mu, const Horizon& horizon) {
  require(mu > 0.0 && std::isfinite(mu), "mu must be > 0");
  detail::PointwiseSpec spec{"eis", mu, detail::Orientation::backward, false, detail::CoefficientIndex::anchor};
  return detail::pointwise_table(system, horizon, nullptr, spec)
      .finish(mu, true, horizon.trend_factor, horizon, false);
}

Certificate datko_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho,
                            const Horizon& horizon) {
  require(rho > 0.0 && std::isfinite(rho), "rho must be > 0");
  detail::SumSpec spec{"datko", rho, detail::Orientation::forward, true, detail::CoefficientIndex::anchor, R};
  Certificate cert = detail::sum_table(system, horizon, nullptr, spec)
                         .finish(rho, true, horizon.trend_factor, horizon, false);
  if (cert.holds()) cert.note = envelope_note(fit_growth(system, horizon), "exponentially stable");
  return cert;
}

Certificate adjoint_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double gamma,
                              const Horizon& horizon) {
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be > 0");
  Certificate cert =
      detail::adjoint_table(system, horizon, R, gamma, "adjoint").finish(gamma, true, horizon.trend_factor, horizon, true);
  if (cert.holds()) cert.note = envelope_note(fit_growth(system, horizon), "exponentially stable");
  return cert;
}

Certificate instability_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho,
                                  const Horizon& horizon) {
  require(rho < 0.0 && std::isfinite(rho), "rho must be < 0");
  require(R.strictly_increasing(), "gauge " + R.describe() + " must be strictly increasing");
  detail::SumSpec spec{"instability", -rho, detail::Orientation::backward, true, detail::CoefficientIndex::anchor, R};
  Certificate cert = detail::sum_table(system, horizon, nullptr, spec)
                         .finish(rho, true, horizon.trend_factor, horizon, false);
  if (cert.holds()) cert.note = envelope_note(fit_decay(system, horizon), "exponentially instable");
  return cert;
}

double datko_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho, int n, int m,
                         const StatePoint& x, const Eigen::VectorXd& v) {
  require(n >= 0 && m >= n, "partial sum needs 0 <= n <= m");
  CompensatedSum sum;
  for (int k = n; k <= m; ++k) {
    const double norm = vector_norm(system.evaluate(k, n, x).apply(v), system.norm_kind());
    sum += R(detail::weighted_ratio(rho * (k - n), norm, 1.0));
  }
  return sum.value();
}

double adjoint_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double gamma, int n, int m,
                           const StatePoint& x, const Eigen::VectorXd& vstar) {
  require(n >= 0 && m >= n, "partial sum needs 0 <= n <= m");
  CompensatedSum sum;
  for (int k = n; k <= m; ++k) {
    const LinearOperator op = system.evaluate(m, k, system.flow(k, n, x));
    sum += R(detail::weighted_ratio(gamma * (m - k), adjoint_apply(op, vstar).dual_norm, 1.0));
  }
  return sum.value();
}

InstabilitySum instability_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho, int n,
                                       int m, const StatePoint& x, const Eigen::VectorXd& v) {
  require(n >= 0 && m >= n, "partial sum needs 0 <= n <= m");
  InstabilitySum out;
  CompensatedSum sum;
  for (int k = n; k <= m; ++k) {
    const double norm = vector_norm(system.evaluate(k, n, x).apply(v), system.norm_kind());
    sum += R(detail::weighted_ratio(-rho * (m - k), norm, 1.0));
  }
  out.sum = sum.value();
  out.final_norm = vector_norm(system.evaluate(m, n, x).apply(v), system.norm_kind());
  out.alpha = detail::weighted_ratio(0.0, R.inverse(out.sum), out.final_norm);
  return out;
}

}  // namespace skewflow
