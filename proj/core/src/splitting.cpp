#include "skewflow/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kernels.hpp"
#include "skewflow/envelope.hpp"
#include "skewflow/errors.hpp"

namespace skewflow {

namespace {

using detail::CoefficientIndex;
using detail::Orientation;

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void require_finite(std::initializer_list<double> values) {
  for (double v : values) require(std::isfinite(v), "exponents must be finite");
}

CompatibilityReport validate(const ProjectorFamily& family, FamilyKind kind, const SkewEvolutionSystem& system,
                             const Horizon& horizon) {
  require(family.kind() == kind, "expected a " + to_string(kind) + " of projectors, got a " + to_string(family.kind()));
  horizon.validate(system.dim());
  const std::vector<TimePair> grid = integer_pairs(horizon.n_max);
  CompatibilityReport report = check_compatible(family, system, grid, horizon.states, horizon.vectors);
  if (const ConditionResult* bad = report.first_failure()) {
    std::ostringstream os;
    os << "projector " << to_string(kind) << " is not compatible with '" << system.name() << "': " << bad->name
       << " has residual " << bad->residual;
    throw InputError(os.str());
  }
  return report;
}

Certificate pointwise(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& p,
                      std::string name, double rate, Orientation o, bool pin, double exponent) {
  detail::PointwiseSpec spec{std::move(name), rate, o, pin, CoefficientIndex::anchor};
  return detail::pointwise_table(system, horizon, &p, spec).finish(exponent, true, horizon.trend_factor, horizon, false);
}

Certificate summed(const SkewEvolutionSystem& system, const Horizon& horizon, const ProjectorMap& p, std::string name,
                   double rate, Orientation o, bool pin, CoefficientIndex coef, const MonotoneGauge& R,
                   double exponent) {
  detail::SumSpec spec{std::move(name), rate, o, pin, coef, R};
  return detail::sum_table(system, horizon, &p, spec).finish(exponent, true, horizon.trend_factor, horizon, false);
}

void assemble(SplitCertificate& out) {
  std::size_t n = 0;
  for (const auto& c : out.parts) n = std::max(n, c.coefficients.size());
  out.coefficients.assign(n, std::numeric_limits<double>::quiet_NaN());
  out.verdict = Verdict::holds;
  for (const auto& c : out.parts) {
    if (!c.holds()) out.verdict = Verdict::fails;
    for (std::size_t i = 0; i < c.coefficients.size(); ++i) {
      const double v = c.coefficients[i];
      if (std::isnan(v)) continue;
      double& slot = out.coefficients[i];
      if (std::isnan(slot) || v > slot) slot = v;
    }
  }
}

}  // namespace

const Certificate* SplitCertificate::part(const std::string& criterion_name) const {
  for (const auto& c : parts)
    if (c.criterion == criterion_name) return &c;
  return nullptr;
}

const Witness* SplitCertificate::witness() const {
  for (const auto& c : parts)
    if (!c.holds() && c.witness) return &*c.witness;
  return nullptr;
}

SplitCertificate dichotomy_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& pair, double nu1,
                                       double nu2, const Horizon& horizon) {
  require_finite({nu1, nu2});
  require(nu1 <= 0.0 && nu2 >= 0.0, "dichotomy exponents need nu1 <= 0 <= nu2");
  SplitCertificate out;
  out.criterion = "dichotomy";
  out.exponents = {nu1, nu2};
  out.compatibility = validate(pair, FamilyKind::pair, system, horizon);
  out.parts.push_back(pointwise(system, horizon, pair[0], "d1'", -nu1, Orientation::forward, true, nu1));
  out.parts.push_back(pointwise(system, horizon, pair[1], "d2'", nu2, Orientation::backward, true, nu2));
  assemble(out);
  return out;
}

SplitCertificate dichotomy_sum_criterion(const SkewEvolutionSystem& system, const ProjectorFamily& pair, double rho1,
                                         double rho2, const Horizon& horizon, const MonotoneGauge& R) {
  require_finite({rho1, rho2});
  require(rho1 > 0.0, "rho1 must be > 0");
  require(rho2 < 0.0, "rho2 must be < 0");
  require(R.strictly_increasing(), "gauge " + R.describe() + " must be strictly increasing");
  SplitCertificate out;
  out.criterion = "dichotomy_sum";
  out.exponents = {rho1, rho2};
  out.compatibility = validate(pair, FamilyKind::pair, system, horizon);
  out.parts.push_back(summed(system, horizon, pair[0], "ed1'", rho1, Orientation::forward, true,
                             CoefficientIndex::anchor, R, rho1));
  out.parts.push_back(summed(system, horizon, pair[1], "ed2'", -rho2, Orientation::backward, true,
                             CoefficientIndex::anchor, R, rho2));
  assemble(out);
  return out;
}

SplitCertificate trichotomy_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& triple, double nu1,
                                        double nu2, double nu3, double nu4, const Horizon& horizon) {
  require_finite({nu1, nu2, nu3, nu4});
  require(nu1 <= nu2 && nu2 <= 0.0 && 0.0 <= nu3 && nu3 <= nu4,
          "trichotomy exponents need nu1 <= nu2 <= 0 <= nu3 <= nu4");
  SplitCertificate out;
  out.criterion = "trichotomy";
  out.exponents = {nu1, nu2, nu3, nu4};
  out.compatibility = validate(triple, FamilyKind::triple, system, horizon);
  out.parts.push_back(pointwise(system, horizon, triple[0], "t1", -nu1, Orientation::forward, false, nu1));
  out.parts.push_back(pointwise(system, horizon, triple[1], "t2", nu4, Orientation::backward, false, nu4));
  out.parts.push_back(pointwise(system, horizon, triple[2], "t3", nu2, Orientation::backward, false, nu2));
  out.parts.push_back(pointwise(system, horizon, triple[2], "t4", -nu3, Orientation::forward, false, nu3));
  assemble(out);
  return out;
}

SplitCertificate trichotomy_sum_criterion(const SkewEvolutionSystem& system, const ProjectorFamily& triple,
                                          double rho1, double rho2, double rho3, double rho4,
                                          const Horizon& horizon) {
  require_finite({rho1, rho2, rho3, rho4});
  require(rho1 > 0.0 && rho2 > 0.0 && rho3 > 0.0 && rho4 > 0.0, "trichotomy sum rates must all be > 0");
  SplitCertificate out;
  out.criterion = "trichotomy_sum";
  out.exponents = {rho1, rho2, rho3, rho4};
  out.compatibility = validate(triple, FamilyKind::triple, system, horizon);

  auto reject = [](const EnvelopeBound& env, const char* what) {
    std::ostringstream os;
    os << what;
    if (env.witness) {
      os << " (";
      for (const auto& [name, value] : env.witness->indices) os << name << "=" << value << " ";
      os << "x=" << env.witness->state.value << ": " << env.witness->reason << ")";
    }
    throw InputError(os.str());
  };
  const EnvelopeBound growth = fit_growth(system, horizon, triple[0]);
  if (!growth.found) reject(growth, "the P1 part has no exponential growth envelope");
  const EnvelopeBound decay = fit_decay(system, horizon, triple[1]);
  if (!decay.found) reject(decay, "the P2 part has no exponential decay envelope");

  const MonotoneGauge id = MonotoneGauge::identity();
  out.parts.push_back(summed(system, horizon, triple[0], "t1'", rho1, Orientation::forward, true,
                             CoefficientIndex::anchor, id, rho1));
  out.parts.push_back(summed(system, horizon, triple[1], "t2'", rho2, Orientation::backward, true,
                             CoefficientIndex::anchor, id, rho2));
  out.parts.push_back(summed(system, horizon, triple[2], "t3'", -rho3, Orientation::forward, false,
                             CoefficientIndex::start, id, rho3));
  out.parts.push_back(summed(system, horizon, triple[2], "t4'", -rho4, Orientation::backward, false,
                             CoefficientIndex::anchor, id, rho4));
  assemble(out);
  std::ostringstream os;
  os << "P1 growth omega <= " << growth.max_omega() << ", P2 decay omega <= " << decay.max_omega();
  out.note = os.str();
  return out;
}

SplitCertificate four_projector_certificate(const SkewEvolutionSystem& system, const ProjectorFamily& quad, double mu,
                                            double nu, const Horizon& horizon, bool cross_check) {
  require_finite({mu, nu});
  require(nu > 0.0 && mu > nu, "four-projector exponents need mu > nu > 0");
  SplitCertificate out;
  out.criterion = "four_projector";
  out.exponents = {mu, nu};
  out.compatibility = validate(quad, FamilyKind::quad, system, horizon);
  out.parts.push_back(pointwise(system, horizon, quad[0], "t1''", nu, Orientation::forward, true, nu));
  out.parts.push_back(pointwise(system, horizon, quad[1], "t2''", mu, Orientation::backward, true, mu));
  out.parts.push_back(pointwise(system, horizon, quad[2], "t3''", -nu, Orientation::backward, true, nu));
  out.parts.push_back(pointwise(system, horizon, quad[3], "t4''", -mu, Orientation::forward, true, mu));
  assemble(out);
  for (const auto& c : out.compatibility.conditions) {
    if (!c.binding && !c.passed) {
      if (!out.note.empty()) out.note += "; ";
      out.note += c.name + " does not hold";
    }
  }
  if (cross_check) {
    const SplitCertificate tri =
        trichotomy_certificate(system, three_from_four(quad, horizon.states), -nu, -nu, mu, mu, horizon);
    out.cross_check_agrees = tri.verdict == out.verdict;
    if (!out.note.empty()) out.note += "; ";
    out.note += *out.cross_check_agrees ? "agrees with the trichotomy certificate"
                                        : "DISAGREES with the trichotomy certificate";
  }
  return out;
}

}  // namespace skewflow
