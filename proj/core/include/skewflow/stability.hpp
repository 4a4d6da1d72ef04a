#pragma once

#include <Eigen/Dense>

#include "skewflow/certificate.hpp"
#include "skewflow/gauge.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/system.hpp"

namespace skewflow {

/// ||Phi(n,m,x)v|| <= a_m e^{-mu(n-m)} ||v||. Throws InputError unless mu > 0.
Certificate es_certificate(const SkewEvolutionSystem& system, double mu, const Horizon& horizon);

/// ||Phi(n,n0,x)v|| <= a_m e^{-mu(m-n)} ||Phi(m,n0,x)v|| for m >= n >= n0.
/// A vanishing ||Phi(m,n0,x)v|| under a nonzero left side is reported as a
/// degenerate witness.
Certificate eis_certificate(const SkewEvolutionSystem& system, double mu, const Horizon& horizon);

/// sum_{k=n}^{m} R(e^{rho(k-n)} ||Phi(k,n,x)v||) <= alpha_n R(||v||).
/// When the sums stay bounded the note records whether an exponential growth
/// envelope was found as well.
Certificate datko_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho,
                            const Horizon& horizon);

/// sum_{k=n}^{m} R(e^{gamma(m-k)} ||Phi(m,k,phi(k,n,x))^* v^*||) <= beta_n R(||v^*||),
/// with v^* drawn from horizon.dual_vectors.
Certificate adjoint_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double gamma,
                              const Horizon& horizon);

/// sum_{k=n}^{m} R(e^{-rho(m-k)} ||Phi(k,n,x)v||) <= R(alpha_m ||Phi(m,n,x)v||), rho < 0.
/// R must be strictly increasing so alpha_m can be recovered through R^{-1}.
Certificate instability_criterion(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho,
                                  const Horizon& horizon);

/// Single partial sums, each operator evaluated directly.
double datko_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho, int n, int m,
                         const StatePoint& x, const Eigen::VectorXd& v);
double adjoint_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double gamma, int n, int m,
                           const StatePoint& x, const Eigen::VectorXd& vstar);

struct InstabilitySum {
  double sum = 0.0;
  double final_norm = 0.0;  // ||Phi(m,n,x)v||
  double alpha = 0.0;       // R^{-1}(sum) / final_norm
};
InstabilitySum instability_partial_sum(const SkewEvolutionSystem& system, const MonotoneGauge& R, double rho, int n,
                                       int m, const StatePoint& x, const Eigen::VectorXd& v);

}  // namespace skewflow
