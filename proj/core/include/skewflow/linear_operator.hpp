#pragma once

#include <Eigen/Dense>

#include "skewflow/norms.hpp"

namespace skewflow {

/// A d x d real matrix acting on (R^d, norm_kind).
class LinearOperator {
 public:
  LinearOperator(Eigen::MatrixXd matrix, NormKind norm_kind);

  static LinearOperator identity(int dim, NormKind norm_kind);

  const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }
  NormKind norm_kind() const noexcept { return norm_kind_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// Induced operator norm with respect to norm_kind().
  double norm() const { return operator_norm(matrix_, norm_kind_); }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;

  LinearOperator operator*(const LinearOperator& rhs) const;

 private:
  Eigen::MatrixXd matrix_;
  NormKind norm_kind_;
};

/// Result of letting an operator's adjoint act on a dual vector.
struct DualAction {
  Eigen::VectorXd value;
  double dual_norm = 0.0;  // measured in dual(op.norm_kind())
};

/// A^* v^*; on R^d with the canonical pairing this is the transpose action.
DualAction adjoint_apply(const LinearOperator& op, const Eigen::VectorXd& vstar);

}  // namespace skewflow
