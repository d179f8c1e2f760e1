// The Lie algebra u(1) + su(2)^n, the group SU(2)^n x U(1) and their
// actions on states and density matrices.
//
// su(2) basis:  A = [[i, 0], [0, -i]],  B = [[0, 1], [-1, 0]],  C = [[0, i], [i, 0]]
// with [A,B] = 2C, [B,C] = 2A, [C,A] = 2B. The u(1) generator acts on
// states as -i t Id.

#pragma once

#include "stabscope/random.hpp"
#include "stabscope/tensor.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace stabscope {

using Mat2 = Eigen::Matrix2cd;

Mat2 su2_a();
Mat2 su2_b();
Mat2 su2_c();

/// x A + y B + z C.
struct Su2Element {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Mat2 matrix() const;
  double norm() const;
  Eigen::Vector3d coords() const { return {x, y, z}; }
  static Su2Element from_coords(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }
  /// Inverse of matrix(): projects a traceless skew-Hermitian 2x2 onto (A,B,C).
  static Su2Element from_matrix(const Mat2& m);

  friend bool operator==(const Su2Element&, const Su2Element&) = default;
};

Su2Element operator+(const Su2Element& a, const Su2Element& b);
Su2Element operator*(double s, const Su2Element& a);
/// [a, b] = 2 (a x b) in (A,B,C) coordinates.
Su2Element bracket(const Su2Element& a, const Su2Element& b);

/// Element of u(1) + su(2)^n. Coordinates are ordered (t, x1, y1, z1, ..., xn, yn, zn).
class LieElement {
public:
  explicit LieElement(int n) : parts_(static_cast<std::size_t>(n)) {}
  LieElement(double phase, std::vector<Su2Element> parts)
      : phase_(phase), parts_(std::move(parts)) {}

  /// `coords` has 3n+1 entries when `with_phase`, 3n otherwise.
  static LieElement from_coords(const Eigen::VectorXd& coords, bool with_phase);

  int qubits() const { return static_cast<int>(parts_.size()); }
  double phase() const { return phase_; }
  void set_phase(double t) { phase_ = t; }
  const std::vector<Su2Element>& parts() const { return parts_; }
  const Su2Element& part(int j) const;
  Su2Element& part(int j);

  Eigen::VectorXd coords(bool with_phase) const;
  /// Full 2^n x 2^n operator; only sensible for small n.
  CMatrix matrix() const;

private:
  double phase_ = 0.0;
  std::vector<Su2Element> parts_;
};

LieElement operator+(const LieElement& a, const LieElement& b);
LieElement operator*(double s, const LieElement& a);
/// The phase part is central, so the bracket has zero phase.
LieElement bracket(const LieElement& a, const LieElement& b);

/// `s` placed in qubit slot j (one-based), zero elsewhere, zero phase.
LieElement embed(int n, int j, const Su2Element& s);

/// Applies a 2x2 matrix to qubit j of a 2^n vector.
CVector apply_single_qubit(const Mat2& op, int j, int n, const CVector& v);

/// (-i t Id + sum_j X_j at slot j) |psi>.
CVector apply_infinitesimal(const LieElement& x, const CVector& psi);
CVector apply_infinitesimal(const LieElement& x, const PureState& psi);

/// [X, rho] for X with zero phase part.
CMatrix commutator_action(const LieElement& x, const CMatrix& rho);
CMatrix commutator_action(const LieElement& x, const DensityMatrix& rho);

/// zeta(I, J) = 2i sum_{l : i_l != j_l} (-1)^{i_l} t_l.
cplx zeta(const MultiIndex& i, const MultiIndex& j, const std::vector<double>& t);

/// Closed-form exponential cos|s| Id + sin|s|/|s| M.
Mat2 exp_su2(const Su2Element& s);

/// n SU(2) factors and a global phase.
class LocalUnitary {
public:
  LocalUnitary(std::vector<Mat2> factors, cplx global_phase = {1.0, 0.0});
  static LocalUnitary identity(int n);
  /// exp(s_j) on every qubit.
  static LocalUnitary exp_of(const std::vector<Su2Element>& generators);
  /// `factor` on qubit j, identity elsewhere.
  static LocalUnitary single(int n, int j, const Mat2& factor);

  int qubits() const { return static_cast<int>(factors_.size()); }
  const std::vector<Mat2>& factors() const { return factors_; }
  const Mat2& factor(int j) const;
  cplx global_phase() const { return global_phase_; }

  CVector apply(const CVector& psi) const;
  PureState apply(const PureState& psi) const;
  DensityMatrix conjugate(const DensityMatrix& rho) const;

  /// (this * other)|psi> = this(other(|psi>)).
  LocalUnitary operator*(const LocalUnitary& other) const;
  LocalUnitary inverse() const;
  LocalUnitary with_phase(cplx phase) const;

  /// Largest deviation of any factor from unitarity or unit determinant.
  double special_unitary_error() const;

  friend bool operator==(const LocalUnitary&, const LocalUnitary&) = default;

private:
  std::vector<Mat2> factors_;
  cplx global_phase_;
};

/// Haar-distributed SU(2) via QR of a complex Ginibre matrix.
Mat2 haar_su2(Rng& rng);
LocalUnitary haar_random_local_unitary(int n, Rng& rng);
LocalUnitary haar_random_local_unitary(int n, std::uint64_t seed);

/// Uniformly random unit vector in C^(2^n).
PureState haar_random_state(int n, Rng& rng);

} // namespace stabscope
