// Real linear algebra helpers for null spaces and subspace comparison.

#pragma once

#include <Eigen/Dense>

#include <limits>

namespace stabscope {

struct NullSpace {
  /// Orthonormal columns spanning the numerical null space.
  Eigen::MatrixXd basis;
  /// Full singular spectrum, descending.
  Eigen::VectorXd singular_values;
  Eigen::Index rank = 0;
  /// sigma_rank / sigma_{rank+1} across the cut (infinite if no cut inside
  /// the spectrum or if the dropped value is exactly zero).
  double gap = std::numeric_limits<double>::infinity();
};

/// Null space of `m` keeping singular values >= rel_tol * sigma_max.
/// When nothing is dropped, `gap` is sigma_min / (rel_tol * sigma_max).
NullSpace null_space(const Eigen::MatrixXd& m, double rel_tol);

/// Orthonormal basis for the column span of `m` (absolute tolerance).
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double tol);

/// Numerical rank with absolute singular value tolerance.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol);

/// Largest principal angle between span(a) and span(b); both must have
/// orthonormal columns. Returns pi/2 when the dimensions differ. Computed
/// through sines so that angles near zero are resolved.
double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Norm of the component of v orthogonal to span(q) (q orthonormal).
double distance_to_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& q);

} // namespace stabscope
