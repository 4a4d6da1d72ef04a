#include "skewflow/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewflow/errors.hpp"

namespace skewflow {

namespace {

std::size_t expected_size(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::single:
      return 1;
    case FamilyKind::pair:
      return 2;
    case FamilyKind::triple:
      return 3;
    case FamilyKind::quad:
      return 4;
  }
  return 0;
}

std::vector<std::string> default_labels(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::single:
      return {"P"};
    case FamilyKind::pair:
      return {"P1", "P2"};
    case FamilyKind::triple:
      return {"P1", "P2", "P3"};
    case FamilyKind::quad:
      return {"R1", "R2", "R3", "R4"};
  }
  return {};
}

double scaled(const Eigen::MatrixXd& residual, double scale, NormKind norm) {
  return operator_norm(residual, norm) / std::max(1.0, scale);
}

/// Algebraic identities of the family at one point, as relative residuals.
std::vector<std::pair<std::string, double>> identities_at(const ProjectorFamily& f, const StatePoint& x,
                                                          NormKind norm) {
  std::vector<Eigen::MatrixXd> p;
  std::vector<double> pn;
  for (std::size_t i = 0; i < f.size(); ++i) {
    p.push_back(f.at(i, x));
    pn.push_back(operator_norm(p.back(), norm));
  }
  const auto d = p[0].rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  std::vector<std::pair<std::string, double>> out;
  auto prod_residual = [&](std::size_t i, std::size_t j, const Eigen::MatrixXd& target) {
    return scaled(p[i] * p[j] - target, pn[i] * pn[j], norm);
  };
  switch (f.kind()) {
    case FamilyKind::single:
      break;
    case FamilyKind::pair:
      out.emplace_back("P1 + P2 = I", scaled(p[0] + p[1] - I, std::max(pn[0], pn[1]), norm));
      out.emplace_back("P1 P2 = P2 P1 = 0",
                       std::max(prod_residual(0, 1, Eigen::MatrixXd::Zero(d, d)),
                                prod_residual(1, 0, Eigen::MatrixXd::Zero(d, d))));
      break;
    case FamilyKind::triple: {
      out.emplace_back("P1 + P2 + P3 = I", scaled(p[0] + p[1] + p[2] - I, std::max({pn[0], pn[1], pn[2]}), norm));
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != j) worst = std::max(worst, prod_residual(i, j, Eigen::MatrixXd::Zero(d, d)));
      out.emplace_back("Pi Pj = 0", worst);
      break;
    }
    case FamilyKind::quad: {
      out.emplace_back("pc1': R1 + R3 = R2 + R4 = I",
                       std::max(scaled(p[0] + p[2] - I, std::max(pn[0], pn[2]), norm),
                                scaled(p[1] + p[3] - I, std::max(pn[1], pn[3]), norm)));
      const double r12 = std::max(prod_residual(0, 1, Eigen::MatrixXd::Zero(d, d)),
                                  prod_residual(1, 0, Eigen::MatrixXd::Zero(d, d)));
      const double r34 = scaled(p[2] * p[3] - p[3] * p[2], pn[2] * pn[3], norm);
      out.emplace_back("pc2': R1 R2 = R2 R1 = 0, R3 R4 = R4 R3", std::max(r12, r34));
      break;
    }
  }
  return out;
}

double idempotence_at(const Eigen::MatrixXd& p, NormKind norm) {
  return operator_norm(p * p - p, norm);
}

/// | ||(A+B)v||^2 - ||Av||^2 - ||Bv||^2 | / max(||Av||^2 + ||Bv||^2, tiny).
double pythagoras(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::VectorXd& v, NormKind norm) {
  const double ab = vector_norm((a + b) * v, norm);
  const double av = vector_norm(a * v, norm);
  const double bv = vector_norm(b * v, norm);
  const double rhs = av * av + bv * bv;
  const double diff = std::abs(ab * ab - rhs);
  return rhs > 0.0 ? diff / rhs : diff;
}

void require_algebra(const ProjectorFamily& f, std::span<const StatePoint> states, const char* what) {
  const StatePoint origin{0.0};
  const std::span<const StatePoint> pts = states.empty() ? std::span<const StatePoint>(&origin, 1) : states;
  for (const StatePoint& x : pts) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double r = idempotence_at(f.at(i, x), NormKind::l2);
      if (!(r <= 1e-10)) {
        std::ostringstream os;
        os << what << ": " << f.label(i) << " is not idempotent at x=" << x.value << " (residual " << r << ")";
        throw InputError(os.str());
      }
    }
    for (const auto& [name, r] : identities_at(f, x, NormKind::l2)) {
      if (!(r <= 1e-12)) {
        std::ostringstream os;
        os << what << ": " << name << " fails at x=" << x.value << " (residual " << r << ")";
        throw InputError(os.str());
      }
    }
  }
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::single:
      return "single";
    case FamilyKind::pair:
      return "pair";
    case FamilyKind::triple:
      return "triple";
    case FamilyKind::quad:
      return "quad";
  }
  return "?";
}

ProjectorFamily::ProjectorFamily(FamilyKind kind, std::vector<ProjectorMap> members, std::vector<std::string> labels)
    : kind_(kind), members_(std::move(members)), labels_(std::move(labels)) {
  if (members_.size() != expected_size(kind)) {
    throw InputError("a " + to_string(kind) + " family needs " + std::to_string(expected_size(kind)) + " members");
  }
  for (const auto& m : members_)
    if (!m) throw InputError("projector family member is empty");
  if (labels_.empty()) labels_ = default_labels(kind);
  if (labels_.size() != members_.size()) throw InputError("projector family labels do not match its members");
}

ProjectorFamily ProjectorFamily::single(ProjectorMap p) { return ProjectorFamily(FamilyKind::single, {std::move(p)}); }

ProjectorFamily ProjectorFamily::pair(ProjectorMap p1, ProjectorMap p2) {
  return ProjectorFamily(FamilyKind::pair, {std::move(p1), std::move(p2)});
}

ProjectorFamily ProjectorFamily::triple(ProjectorMap p1, ProjectorMap p2, ProjectorMap p3) {
  return ProjectorFamily(FamilyKind::triple, {std::move(p1), std::move(p2), std::move(p3)});
}

ProjectorFamily ProjectorFamily::quad(ProjectorMap r1, ProjectorMap r2, ProjectorMap r3, ProjectorMap r4) {
  return ProjectorFamily(FamilyKind::quad, {std::move(r1), std::move(r2), std::move(r3), std::move(r4)});
}

ProjectorFamily ProjectorFamily::coordinate(std::vector<int> block_sizes) {
  if (block_sizes.empty() || block_sizes.size() > 3) throw InputError("coordinate families have 1 to 3 blocks");
  int d = 0;
  for (int b : block_sizes) {
    if (b < 0) throw InputError("coordinate block sizes must be >= 0");
    d += b;
  }
  if (d < 1) throw InputError("coordinate family has dimension 0");
  std::vector<ProjectorMap> members;
  int offset = 0;
  for (int b : block_sizes) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < b; ++i) p(offset + i, offset + i) = 1.0;
    members.push_back(constant_projector(p));
    offset += b;
  }
  const FamilyKind kind = block_sizes.size() == 1   ? FamilyKind::single
                          : block_sizes.size() == 2 ? FamilyKind::pair
                                                    : FamilyKind::triple;
  return ProjectorFamily(kind, std::move(members));
}

const ConditionResult* CompatibilityReport::find(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

const ConditionResult* CompatibilityReport::first_failure() const {
  for (const auto& c : conditions)
    if (c.binding && !c.passed) return &c;
  return nullptr;
}

InvarianceReport check_invariance(const ProjectorMap& projector, const SkewEvolutionSystem& system,
                                  std::span<const TimePair> grid, std::span<const StatePoint> states,
                                  double tolerance) {
  return invariance_residual(system, projector, grid, states, tolerance);
}

CompatibilityReport check_compatible(const ProjectorFamily& family, const SkewEvolutionSystem& system,
                                     std::span<const TimePair> grid, std::span<const StatePoint> states,
                                     std::span<const Eigen::VectorXd> vectors, const CompatibilityTolerances& tol) {
  if (states.empty()) throw InputError("compatibility check needs at least one state");
  const NormKind norm = system.norm_kind();
  CompatibilityReport report;
  auto add = [&](std::string name, double residual, double limit, bool binding) {
    ConditionResult c{std::move(name), residual, residual <= limit, binding};
    if (binding && !c.passed) report.passed = false;
    report.conditions.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < family.size(); ++i) {
    double worst = 0.0;
    for (const StatePoint& x : states) {
      const Eigen::MatrixXd p = family.at(i, x);
      if (p.rows() != system.dim() || p.cols() != system.dim()) {
        throw InputError("projector " + family.label(i) + " does not match the system dimension");
      }
      worst = std::max(worst, idempotence_at(p, norm));
    }
    add("idempotent " + family.label(i), worst, tol.idempotence, true);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const InvarianceReport inv = check_invariance(family[i], system, grid, states, tol.invariance);
    add("invariant " + family.label(i), inv.max_residual, tol.invariance, true);
  }

  std::vector<std::pair<std::string, double>> worst_identities;
  for (const StatePoint& x : states) {
    const auto ids = identities_at(family, x, norm);
    if (worst_identities.empty()) {
      worst_identities = ids;
    } else {
      for (std::size_t k = 0; k < ids.size(); ++k)
        worst_identities[k].second = std::max(worst_identities[k].second, ids[k].second);
    }
  }
  for (const auto& [name, r] : worst_identities) add(name, r, tol.algebra, true);

  if (family.kind() == FamilyKind::quad) {
    std::vector<NormKind> norms{NormKind::l2};
    if (norm != NormKind::l2) norms.push_back(norm);
    for (NormKind nk : norms) {
      double pc3 = 0.0;
      double pc4 = 0.0;
      double pc5 = 0.0;
      for (const StatePoint& x : states) {
        const Eigen::MatrixXd r1 = family.at(0, x);
        const Eigen::MatrixXd r2 = family.at(1, x);
        const Eigen::MatrixXd r34 = family.at(2, x) * family.at(3, x);
        for (const auto& v : vectors) {
          pc3 = std::max(pc3, pythagoras(r1, r2, v, nk));
          pc4 = std::max(pc4, pythagoras(r1, r34, v, nk));
          pc5 = std::max(pc5, pythagoras(r2, r34, v, nk));
        }
      }
      const std::string suffix = " (" + to_string(nk) + ")";
      add("pc3'" + suffix, pc3, tol.norm_identity, false);
      add("pc4'" + suffix, pc4, tol.norm_identity, false);
      add("pc5'" + suffix, pc5, tol.norm_identity, false);
    }
  }
  return report;
}

ProjectorFamily four_from_three(const ProjectorFamily& triple, std::span<const StatePoint> states) {
  if (triple.kind() != FamilyKind::triple) throw InputError("four_from_three needs a triple");
  require_algebra(triple, states, "four_from_three");
  const ProjectorMap p1 = triple[0];
  const ProjectorMap p2 = triple[1];
  auto complement = [](ProjectorMap p) -> ProjectorMap {
    return [p](const StatePoint& x) {
      Eigen::MatrixXd m = p(x);
      return Eigen::MatrixXd(Eigen::MatrixXd::Identity(m.rows(), m.cols()) - m);
    };
  };
  return ProjectorFamily::quad(p1, p2, complement(p1), complement(p2));
}

ProjectorFamily three_from_four(const ProjectorFamily& quad, std::span<const StatePoint> states) {
  if (quad.kind() != FamilyKind::quad) throw InputError("three_from_four needs a quad");
  require_algebra(quad, states, "three_from_four");
  const ProjectorMap r3 = quad[2];
  const ProjectorMap r4 = quad[3];
  return ProjectorFamily::triple(quad[0], quad[1],
                                 [r3, r4](const StatePoint& x) { return Eigen::MatrixXd(r3(x) * r4(x)); });
}

}  // namespace skewflow
