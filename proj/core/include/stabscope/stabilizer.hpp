// Stabilizer subalgebras K_psi (in u(1)+su(2)^n) and K_rho (in su(2)^n)
// computed as numerical null spaces of the realified action maps.

#pragma once

#include "stabscope/lie.hpp"
#include "stabscope/tensor.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace stabscope {

/// Relative singular value cut for the stabilizer null spaces.
inline constexpr double kNullTol = 1e-8;
/// Minimum singular value gap across the rank cut before a result is
/// flagged ill-conditioned.
inline constexpr double kGapThreshold = 1e4;
/// Bracket closure / principal angle tolerance.
inline constexpr double kAlgebraTol = 1e-7;

enum class Ambient { pure, density };

std::string to_string(Ambient a);

struct StabilizerBasis {
  Ambient ambient = Ambient::pure;
  int n = 0;
  /// Orthonormal in coordinates (t, x1, y1, z1, ...) for pure, (x1, ...) for density.
  std::vector<LieElement> elements;
  std::vector<int> proj_dims;
  Eigen::VectorXd singular_values;
  double gap = 0.0;
  bool ill_conditioned = false;
  /// max over elements of ||X psi|| or ||[X, rho]||_F.
  double max_residual = 0.0;

  int dim() const { return static_cast<int>(elements.size()); }
  bool with_phase() const { return ambient == Ambient::pure; }
  /// Columns are element coordinates.
  Eigen::MatrixXd coordinate_matrix() const;
  /// Same with the phase row dropped (the projection P onto su(2)^n).
  Eigen::MatrixXd su2_coordinate_matrix() const;
};

/// Realified (2 * 2^n) x (3n + 1) matrix of (t, coords) -> X|psi>.
Eigen::MatrixXd pure_action_matrix(const PureState& psi);
/// Realified (2 * 4^n) x 3n matrix of coords -> [X, rho].
Eigen::MatrixXd density_action_matrix(const DensityMatrix& rho);

StabilizerBasis stabilizer_pure(const PureState& psi, double tol = kNullTol);
StabilizerBasis stabilizer_density(const DensityMatrix& rho, double tol = kNullTol);

/// Rank of the slot-j coordinate block of K.
int projection_dim(const StabilizerBasis& k, int j, double tol = kNullTol);

struct ProjectionCheck {
  bool pass = false;
  int dim_pure = 0;
  int dim_density = 0;
  std::vector<int> proj_pure;
  std::vector<int> proj_density;
  /// Largest principal angle between P K_psi and K_rho.
  double max_angle = 0.0;
};

/// Computes K_psi and K_rho independently and compares P K_psi with K_rho.
ProjectionCheck phase_projection_check(const PureState& psi, double tol = kNullTol);

enum class AlgebraKind { abelian, su2, other };

std::string to_string(AlgebraKind k);

struct AlgebraType {
  AlgebraKind kind = AlgebraKind::abelian;
  bool closed = true;
  double closure_residual = 0.0;
  /// structure[a][b] = coordinates of [e_a, e_b] in the basis.
  std::vector<std::vector<Eigen::VectorXd>> structure;
  Eigen::MatrixXd killing;
};

AlgebraType algebra_type(const StabilizerBasis& k);
/// Orthonormalizes `elements` first; coordinates exclude the phase when
/// `with_phase` is false.
AlgebraType algebra_type(const std::vector<LieElement>& elements, bool with_phase);

/// Orthonormal coordinate basis (columns) of the span of `elements`.
Eigen::MatrixXd span_of(const std::vector<LieElement>& elements, bool with_phase);

/// <sum A_k, sum B_k, sum C_k> in su(2)^n coordinates.
std::vector<LieElement> diagonal_su2(int n);
/// { sum t_k A_k : sum t_k = 0 }.
std::vector<LieElement> ghz_stabilizer(int n);

} // namespace stabscope
