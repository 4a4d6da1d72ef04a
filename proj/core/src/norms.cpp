#include "skewflow/norms.hpp"

#include <cmath>

#include "skewflow/errors.hpp"

namespace skewflow {

NormKind dual(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::l1:
      return NormKind::linf;
    case NormKind::linf:
      return NormKind::l1;
    case NormKind::l2:
      break;
  }
  return NormKind::l2;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::l1:
      return "l1";
    case NormKind::l2:
      return "l2";
    case NormKind::linf:
      return "linf";
  }
  return "l1";
}

NormKind parse_norm_kind(std::string_view text) {
  if (text == "l1") return NormKind::l1;
  if (text == "l2") return NormKind::l2;
  if (text == "linf") return NormKind::linf;
  throw InputError("unknown norm '" + std::string(text) + "' (expected l1, l2 or linf)");
}

double vector_norm(const Eigen::VectorXd& v, NormKind kind) {
  switch (kind) {
    case NormKind::l1:
      return v.lpNorm<1>();
    case NormKind::l2:
      return v.norm();
    case NormKind::linf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return 0.0;
}

double operator_norm(const Eigen::MatrixXd& a, NormKind kind) {
  if (a.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::l1:
      return a.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::linf:
      return a.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::l2: {
      if (a.rows() == 1 || a.cols() == 1) return a.norm();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
      return svd.singularValues()(0);
    }
  }
  return 0.0;
}

Eigen::VectorXd normalized(const Eigen::VectorXd& v, NormKind kind) {
  const double n = vector_norm(v, kind);
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("cannot normalize a zero or non-finite vector");
  return v / n;
}

Eigen::VectorXd norming_functional(const Eigen::VectorXd& v, NormKind kind) {
  const double n = vector_norm(v, kind);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(v.size());
  if (n == 0.0) {
    if (v.size() > 0) f(0) = 1.0;
    return f;
  }
  switch (kind) {
    case NormKind::l1:
      // sign vector: linf norm 1
      for (Eigen::Index i = 0; i < v.size(); ++i) f(i) = v(i) > 0 ? 1.0 : (v(i) < 0 ? -1.0 : 0.0);
      break;
    case NormKind::l2:
      f = v / n;
      break;
    case NormKind::linf: {
      Eigen::Index imax = 0;
      v.cwiseAbs().maxCoeff(&imax);
      f(imax) = v(imax) > 0 ? 1.0 : -1.0;
      break;
    }
  }
  return f;
}

}  // namespace skewflow
