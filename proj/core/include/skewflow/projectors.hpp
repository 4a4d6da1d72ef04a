#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/system.hpp"

namespace skewflow {

enum class FamilyKind { single, pair, triple, quad };
std::string to_string(FamilyKind kind);

/// 1 to 4 projector-valued maps over X. Pairs and triples are labelled P1..,
/// quads R1..R4.
class ProjectorFamily {
 public:
  ProjectorFamily(FamilyKind kind, std::vector<ProjectorMap> members, std::vector<std::string> labels = {});

  static ProjectorFamily single(ProjectorMap p);
  static ProjectorFamily pair(ProjectorMap p1, ProjectorMap p2);
  static ProjectorFamily triple(ProjectorMap p1, ProjectorMap p2, ProjectorMap p3);
  static ProjectorFamily quad(ProjectorMap r1, ProjectorMap r2, ProjectorMap r3, ProjectorMap r4);

  /// Constant coordinate projectors onto consecutive blocks of R^d, one member
  /// per block (1 block: single, 2: pair, 3: triple).
  static ProjectorFamily coordinate(std::vector<int> block_sizes);

  FamilyKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return members_.size(); }
  const ProjectorMap& operator[](std::size_t i) const { return members_.at(i); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  Eigen::MatrixXd at(std::size_t i, const StatePoint& x) const { return members_.at(i)(x); }

 private:
  FamilyKind kind_;
  std::vector<ProjectorMap> members_;
  std::vector<std::string> labels_;
};

/// P(phi(t,s,x)) Phi(t,s,x) = Phi(t,s,x) P(x), relative residual, pass iff <= tolerance.
InvarianceReport check_invariance(const ProjectorMap& projector, const SkewEvolutionSystem& system,
                                  std::span<const TimePair> grid, std::span<const StatePoint> states,
                                  double tolerance = 1e-9);

struct ConditionResult {
  std::string name;
  double residual = 0.0;
  bool passed = true;
  bool binding = true;  // non-binding conditions are recorded but do not reject the family
};

struct CompatibilityReport {
  std::vector<ConditionResult> conditions;
  bool passed = true;  // all binding conditions pass

  const ConditionResult* find(const std::string& name) const;
  /// First failing binding condition, or nullptr.
  const ConditionResult* first_failure() const;
};

struct CompatibilityTolerances {
  double idempotence = 1e-10;
  double algebra = 1e-12;  // relative to max(1, product of member norms)
  double invariance = 1e-9;
  double norm_identity = 1e-9;  // relative, for pc3'-pc5'
};

/// Idempotence and invariance of every member plus the algebraic identities
/// of the family kind. Quads additionally record the norm identities pc3'-pc5'
/// on the sampled vectors, in l2 and in the system norm, as non-binding
/// conditions.
CompatibilityReport check_compatible(const ProjectorFamily& family, const SkewEvolutionSystem& system,
                                     std::span<const TimePair> grid, std::span<const StatePoint> states,
                                     std::span<const Eigen::VectorXd> vectors = {},
                                     const CompatibilityTolerances& tol = {});

/// R1 = P1, R2 = P2, R3 = I - P1, R4 = I - P2. The algebra of the input is
/// checked at `states` (default: the point 0) and InputError is thrown when
/// it fails.
ProjectorFamily four_from_three(const ProjectorFamily& triple, std::span<const StatePoint> states = {});

/// P1 = R1, P2 = R2, P3 = R3 R4.
ProjectorFamily three_from_four(const ProjectorFamily& quad, std::span<const StatePoint> states = {});

}  // namespace skewflow
