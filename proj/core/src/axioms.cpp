#include "skewflow/axioms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewflow/errors.hpp"
#include "skewflow/random.hpp"

namespace skewflow {

namespace {

double identity_residual(const SkewEvolutionSystem& system, double t, const StatePoint& x) {
  const LinearOperator id = system.evaluate(t, t, x);
  const double op = operator_norm(id.matrix() - Eigen::MatrixXd::Identity(system.dim(), system.dim()),
                                  system.norm_kind());
  const double flow = std::abs(system.flow(t, t, x).value - x.value);
  return std::max(op, flow);
}

}  // namespace

AxiomReport verify_axioms(const SkewEvolutionSystem& system, std::span<const TimeTriple> grid,
                          std::span<const StatePoint> states, double tolerance) {
  if (grid.empty() || states.empty()) throw InputError("axiom grid and state list must be nonempty");
  AxiomReport report;
  report.tolerance = tolerance;
  const NormKind norm = system.norm_kind();
  for (const TimeTriple& tr : grid) {
    if (!(tr.t >= tr.s && tr.s >= tr.t0 && tr.t0 >= 0.0)) {
      std::ostringstream os;
      os << "axiom triple (" << tr.t << ", " << tr.s << ", " << tr.t0 << ") violates t >= s >= t0 >= 0";
      throw InputError(os.str());
    }
    for (const StatePoint& x : states) {
      const StatePoint y = system.flow(tr.s, tr.t0, x);
      const LinearOperator outer = system.evaluate(tr.t, tr.s, y);
      const LinearOperator inner = system.evaluate(tr.s, tr.t0, x);
      const LinearOperator direct = system.evaluate(tr.t, tr.t0, x);
      const Eigen::MatrixXd diff = outer.matrix() * inner.matrix() - direct.matrix();
      const double scale = outer.norm() * inner.norm();
      const double abs_res = operator_norm(diff, norm);
      double cocycle = 0.0;
      if (scale > 0.0) {
        cocycle = abs_res / scale;
      } else if (abs_res > 0.0) {
        cocycle = std::numeric_limits<double>::infinity();
      }

      const StatePoint composed = system.flow(tr.t, tr.s, y);
      const StatePoint straight = system.flow(tr.t, tr.t0, x);
      const double semiflow = std::abs(composed.value - straight.value) / std::max(1.0, std::abs(straight.value));

      report.rows.push_back({tr, x, cocycle, semiflow});
      report.max_cocycle_residual = std::max(report.max_cocycle_residual, cocycle);
      report.max_semiflow_residual = std::max(report.max_semiflow_residual, semiflow);
      for (double t : {tr.t, tr.s, tr.t0}) {
        report.max_identity_residual = std::max(report.max_identity_residual, identity_residual(system, t, x));
      }
    }
  }
  report.passed = report.max_cocycle_residual <= tolerance && report.max_semiflow_residual <= tolerance &&
                  report.max_identity_residual <= tolerance;
  return report;
}

std::vector<TimeTriple> random_triples(int count, double t_max, std::uint64_t seed, bool integer_times) {
  if (count < 1 || !(t_max >= 0.0)) throw InputError("random_triples needs count >= 1 and t_max >= 0");
  Rng rng(seed);
  std::vector<TimeTriple> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::array<double, 3> v{};
    for (double& e : v) {
      e = integer_times ? std::floor(rng.uniform() * (std::floor(t_max) + 1.0)) : rng.uniform() * t_max;
      if (integer_times) e = std::min(e, std::floor(t_max));
    }
    std::sort(v.begin(), v.end());
    out.push_back({v[2], v[1], v[0]});
  }
  return out;
}

}  // namespace skewflow
