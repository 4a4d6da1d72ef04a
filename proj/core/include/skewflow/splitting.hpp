#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewflow/certificate.hpp"
#include "skewflow/gauge.hpp"
#include "skewflow/horizon.hpp"
#include "skewflow/projectors.hpp"
#include "skewflow/system.hpp"

namespace skewflow {

/// Certificates of a splitting: one part per inequality and a shared
/// coefficient sequence (the elementwise max over the parts).
struct SplitCertificate {
  std::string criterion;
  Verdict verdict = Verdict::holds;
  std::vector<Certificate> parts;
  std::vector<double> exponents;  // as supplied, in the order of the inequalities
  std::vector<double> coefficients;
  CompatibilityReport compatibility;
  std::optional<bool> cross_check_agrees;  // four-projector only
  std::string note;

  bool holds() const noexcept { return verdict == Verdict::holds; }
  const Certificate* part(const std::string& criterion_name) const;
  /// Witness of the first failing part, if any.
  const Witness* witness() const;
};

/// Every split analysis first checks the family on the integer pairs of the
/// horizon and the sampled states and throws InputError naming the first
/// failing condition. Trajectories are kept inside the range of each
/// projector while they are propagated.

/// (d1') ||Phi(m,n,x)P1 v|| <= a_n ||P1 v|| e^{nu1(m-n)}
/// (d2') ||P2 v|| <= a_m ||Phi(m,n,x)P2 v|| e^{-nu2(m-n)}, nu1 <= 0 <= nu2.
SplitCertificate dichotomy_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& pair, double nu1,
                                       double nu2, const Horizon& horizon);

/// (ed1') sum_{k=n}^{m} R(e^{rho1(k-n)} ||Phi(k,n,x)P1 v||) <= alpha_n R(||P1 v||)
/// (ed2') sum_{k=n}^{m} R(e^{-rho2(m-k)} ||Phi(k,n,x)P2 v||) <= R(beta_m ||Phi(m,n,x)P2 v||),
/// rho1 > 0 > rho2.
SplitCertificate dichotomy_sum_criterion(const SkewEvolutionSystem& system, const ProjectorFamily& pair, double rho1,
                                         double rho2, const Horizon& horizon,
                                         const MonotoneGauge& R = MonotoneGauge::identity());

/// (t1)-(t4) over n <= p <= m with nu1 <= nu2 <= 0 <= nu3 <= nu4.
SplitCertificate trichotomy_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& triple, double nu1,
                                        double nu2, double nu3, double nu4, const Horizon& horizon);

/// (t1')-(t4') with all rho > 0. Requires exponential growth on P1 and
/// exponential decay on P2; a missing envelope throws InputError with its
/// witness.
SplitCertificate trichotomy_sum_criterion(const SkewEvolutionSystem& system, const ProjectorFamily& triple,
                                          double rho1, double rho2, double rho3, double rho4,
                                          const Horizon& horizon);

/// (t1'')-(t4'') over m, p >= 0 with mu > nu > 0. With cross_check the verdict
/// is compared with trichotomy_certificate on three_from_four(quad) and
/// exponents (-nu, -nu, mu, mu).
SplitCertificate four_projector_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& quad, double mu,
                                            double nu, const Horizon& horizon, bool cross_check = true);

}  // namespace skewflow
