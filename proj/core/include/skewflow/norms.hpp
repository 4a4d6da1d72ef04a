#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace skewflow {

/// Norm placed on V = R^d.
enum class NormKind { l1, l2, linf };

/// Dual norm on V*: l1 <-> linf, l2 <-> l2.
NormKind dual(NormKind kind) noexcept;

std::string to_string(NormKind kind);
NormKind parse_norm_kind(std::string_view text);

double vector_norm(const Eigen::VectorXd& v, NormKind kind);

/// Induced operator norm: max column sum (l1), spectral norm (l2), max row sum (linf).
double operator_norm(const Eigen::MatrixXd& a, NormKind kind);

/// Returns v / ||v||; throws InputError for the zero vector.
Eigen::VectorXd normalized(const Eigen::VectorXd& v, NormKind kind);

/// A dual vector v* with ||v*||_dual = 1 and <v, v*> = ||v||.
Eigen::VectorXd norming_functional(const Eigen::VectorXd& v, NormKind kind);

}  // namespace skewflow
