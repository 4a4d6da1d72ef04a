#include "skewflow/system.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>

#include "skewflow/errors.hpp"

namespace skewflow {

bool is_integer_time(double t) noexcept { return std::isfinite(t) && std::floor(t) == t; }

SkewEvolutionSystem::SkewEvolutionSystem(Definition definition) {
  if (definition.dim < 1) throw InputError("system dimension must be >= 1");
  if (!definition.cocycle) throw InputError("system '" + definition.name + "' has no cocycle");
  if (!definition.semiflow) {
    definition.semiflow = [](double t, double s, const StatePoint& x) { return StatePoint{x.value + (t - s)}; };
  }
  norm_ = definition.norm;
  def_ = std::make_shared<const Definition>(std::move(definition));
}

void SkewEvolutionSystem::check_times(double t, double s) const {
  if (!std::isfinite(t) || !std::isfinite(s) || s < 0.0 || t < s) {
    std::ostringstream os;
    os << "time pair (t=" << t << ", s=" << s << ") is outside T = {t >= s >= 0}";
    throw DomainError(os.str());
  }
  if (def_->domain == TimeDomain::integer && !(is_integer_time(t) && is_integer_time(s))) {
    std::ostringstream os;
    os << "system '" << def_->name << "' is defined at integer times only (t=" << t << ", s=" << s << ")";
    throw DomainError(os.str());
  }
}

bool SkewEvolutionSystem::is_valid_state(const StatePoint& x) const {
  if (def_->valid_state) return def_->valid_state(x);
  return std::isfinite(x.value) && x.value >= 0.0;
}

void SkewEvolutionSystem::check_state(const StatePoint& x) const {
  if (!is_valid_state(x)) {
    std::ostringstream os;
    os << "state " << x.value << " is not a point of the base space of '" << def_->name << "'";
    throw InputError(os.str());
  }
}

LinearOperator SkewEvolutionSystem::evaluate(double t, double s, const StatePoint& x) const {
  check_times(t, s);
  check_state(x);
  Eigen::MatrixXd m = def_->cocycle(t, s, x);
  if (m.rows() != def_->dim || m.cols() != def_->dim) {
    throw InputError("cocycle of '" + def_->name + "' returned a matrix of the wrong size");
  }
  if (lambda_ != 0.0) m *= std::exp(-lambda_ * (t - s));
  return LinearOperator(std::move(m), norm_);
}

StatePoint SkewEvolutionSystem::flow(double t, double s, const StatePoint& x) const {
  check_times(t, s);
  check_state(x);
  return def_->semiflow(t, s, x);
}

SkewEvolutionSystem SkewEvolutionSystem::with_norm(NormKind norm) const {
  SkewEvolutionSystem copy = *this;
  copy.norm_ = norm;
  return copy;
}

SkewEvolutionSystem shift(const SkewEvolutionSystem& system, double lambda) {
  if (!std::isfinite(lambda)) throw InputError("shift rate must be finite");
  SkewEvolutionSystem copy = system;
  copy.lambda_ = system.lambda_ + lambda;
  return copy;
}

InvarianceReport invariance_residual(const SkewEvolutionSystem& system, const ProjectorMap& projector,
                                     std::span<const TimePair> grid, std::span<const StatePoint> states,
                                     double tolerance) {
  InvarianceReport report;
  const NormKind norm = system.norm_kind();
  for (const StatePoint& x : states) {
    const Eigen::MatrixXd px = projector(x);
    if (px.rows() != system.dim() || px.cols() != system.dim()) {
      throw InputError("projector dimension does not match system dimension");
    }
    for (const TimePair& tp : grid) {
      const LinearOperator phi = system.evaluate(tp.t, tp.s, x);
      const Eigen::MatrixXd p_target = projector(system.flow(tp.t, tp.s, x));
      const Eigen::MatrixXd lhs = p_target * phi.matrix();
      const Eigen::MatrixXd rhs = phi.matrix() * px;
      const double scale =
          phi.norm() * std::max(operator_norm(px, norm), operator_norm(p_target, norm));
      const double measured = scale > 0.0 ? operator_norm(lhs - rhs, norm) / scale : 0.0;
      if (measured > report.max_residual || std::isnan(measured)) {
        report.max_residual = measured;
        report.worst_times = tp;
        report.worst_state = x;
      }
    }
  }
  report.passed = report.max_residual <= tolerance;
  return report;
}

SkewEvolutionSystem restrict_to(const SkewEvolutionSystem& system, ProjectorMap projector,
                                std::span<const TimePair> grid, std::span<const StatePoint> states,
                                double tolerance) {
  const InvarianceReport inv = invariance_residual(system, projector, grid, states, tolerance);
  if (!inv.passed) {
    std::ostringstream os;
    os << "projector is not invariant for '" << system.name() << "': residual " << inv.max_residual
       << " at (t=" << inv.worst_times.t << ", s=" << inv.worst_times.s << ", x=" << inv.worst_state.value << ")";
    throw InputError(os.str());
  }
  SkewEvolutionSystem::Definition def;
  def.name = system.name() + "|P";
  def.dim = system.dim();
  def.norm = system.norm_kind();
  def.domain = system.domain();
  def.semiflow = [system](double t, double s, const StatePoint& x) { return system.flow(t, s, x); };
  def.cocycle = [system, projector](double t, double s, const StatePoint& x) {
    return Eigen::MatrixXd(system.evaluate(t, s, x).matrix() * projector(x));
  };
  def.valid_state = [system](const StatePoint& x) { return system.is_valid_state(x); };
  return SkewEvolutionSystem(std::move(def));
}

std::vector<TimePair> integer_pairs(int n_max) {
  std::vector<TimePair> out;
  for (int t = 0; t <= n_max; ++t)
    for (int s = 0; s <= t; ++s) out.push_back({static_cast<double>(t), static_cast<double>(s)});
  return out;
}

ProjectorMap constant_projector(Eigen::MatrixXd p) {
  return [p = std::move(p)](const StatePoint&) { return p; };
}

}  // namespace skewflow
