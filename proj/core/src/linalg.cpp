#include "stabscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stabscope {

namespace {

// Tall matrices go through a QR first; the SVD then runs on the small
// triangular factor.
Eigen::JacobiSVD<Eigen::MatrixXd> right_svd(const Eigen::MatrixXd& m) {
  if (m.rows() > 2 * m.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::MatrixXd r =
        qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
    return Eigen::JacobiSVD<Eigen::MatrixXd>(r, Eigen::ComputeFullV);
  }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeFullV);
}

} // namespace

NullSpace null_space(const Eigen::MatrixXd& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  NullSpace out;
  out.singular_values = Eigen::VectorXd::Zero(cols);
  if (cols == 0) {
    out.basis = Eigen::MatrixXd(0, 0);
    return out;
  }
  if (m.rows() == 0) {
    out.basis = Eigen::MatrixXd::Identity(cols, cols);
    return out;
  }
  const auto svd = right_svd(m);
  const Eigen::VectorXd& s = svd.singularValues();
  out.singular_values.head(s.size()) = s;
  const double smax = out.singular_values(0);
  if (smax == 0.0) {
    out.basis = Eigen::MatrixXd::Identity(cols, cols);
    return out;
  }
  const double cut = rel_tol * smax;
  Eigen::Index rank = 0;
  while (rank < cols && out.singular_values(rank) >= cut) ++rank;
  out.rank = rank;
  out.basis = svd.matrixV().rightCols(cols - rank);
  if (rank == cols) {
    out.gap = out.singular_values(cols - 1) / cut;
  } else if (out.singular_values(rank) > 0.0) {
    out.gap = out.singular_values(rank - 1) / out.singular_values(rank);
  }
  return out;
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > tol) ++r;
  return r;
}

double max_principal_angle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) return std::numbers::pi / 2.0;
  if (a.cols() == 0) return 0.0;
  // sin of the largest angle = || (I - b b^T) a ||_2
  const Eigen::MatrixXd residual = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  const double s = std::clamp(svd.singularValues()(0), 0.0, 1.0);
  return std::asin(s);
}

double distance_to_span(const Eigen::VectorXd& v, const Eigen::MatrixXd& q) {
  if (q.cols() == 0) return v.norm();
  return (v - q * (q.transpose() * v)).norm();
}

} // namespace stabscope
