#include "skewflow/linear_operator.hpp"

#include <string>

#include "skewflow/errors.hpp"

namespace skewflow {

LinearOperator::LinearOperator(Eigen::MatrixXd matrix, NormKind norm_kind)
    : matrix_(std::move(matrix)), norm_kind_(norm_kind) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
    throw InputError("linear operator must be square with dimension >= 1, got " +
                     std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
  }
}

LinearOperator LinearOperator::identity(int dim, NormKind norm_kind) {
  return LinearOperator(Eigen::MatrixXd::Identity(dim, dim), norm_kind);
}

Eigen::VectorXd LinearOperator::apply(const Eigen::VectorXd& v) const {
  if (v.size() != matrix_.cols()) {
    throw InputError("vector of size " + std::to_string(v.size()) + " applied to operator of dimension " +
                     std::to_string(matrix_.cols()));
  }
  return matrix_ * v;
}

LinearOperator LinearOperator::operator*(const LinearOperator& rhs) const {
  if (rhs.dim() != dim()) throw InputError("operator dimension mismatch in composition");
  return LinearOperator(matrix_ * rhs.matrix_, norm_kind_);
}

DualAction adjoint_apply(const LinearOperator& op, const Eigen::VectorXd& vstar) {
  if (vstar.size() != op.matrix().rows()) {
    throw InputError("dual vector of size " + std::to_string(vstar.size()) +
                     " does not match operator dimension " + std::to_string(op.dim()));
  }
  DualAction out;
  out.value = op.matrix().transpose() * vstar;
  out.dual_norm = vector_norm(out.value, dual(op.norm_kind()));
  return out;
}

}  // namespace skewflow
