#include "stabscope/classifier.hpp"
#include "stabscope/linalg.hpp"
#include "stabscope/stabilizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace stabscope;

namespace {

// Null space of psi's action from dense generator matrices, by full SVD.
Eigen::MatrixXd dense_pure_null_space(const PureState& psi) {
  const int n = psi.qubits();
  const Eigen::Index cols = 3 * n + 1;
  const Eigen::Index d = psi.dimension();
  Eigen::MatrixXd m(2 * d, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(cols);
    e(c) = 1.0;
    const CVector v = LieElement::from_coords(e, true).matrix() * psi.amplitudes();
    m.col(c) << v.real(), v.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > 1e-8 * s(0)) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

} // namespace

TEST(NullSpace, RankDeficientMatrix) {
  Eigen::MatrixXd m(4, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1, 1, 3, 4;
  const NullSpace ns = null_space(m, 1e-10);
  ASSERT_EQ(ns.basis.cols(), 1);
  EXPECT_LT((m * ns.basis).norm(), 1e-12);
  EXPECT_GT(ns.gap, 1e4);
  EXPECT_EQ(null_space(Eigen::MatrixXd::Zero(3, 2), 1e-8).basis.cols(), 2);
}

TEST(PrincipalAngle, KnownPlanes) {
  Eigen::MatrixXd a(3, 1);
  a << 1, 0, 0;
  Eigen::MatrixXd b(3, 1);
  b << std::cos(0.3), std::sin(0.3), 0;
  EXPECT_NEAR(max_principal_angle(a, b), 0.3, 1e-14);
  EXPECT_NEAR(max_principal_angle(a, a), 0.0, 1e-15);
  EXPECT_NEAR(max_principal_angle(a, Eigen::MatrixXd::Identity(3, 2)), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(distance_to_span(b.col(0), a), std::sin(0.3), 1e-14);
}

TEST(StabilizerPure, AgreesWithDenseOracle) {
  Rng rng = make_rng(31);
  std::vector<PureState> states{ghz_state(3, 1.0, 1.0), w_state(3), singlet_pair_product(),
                                canonical_4q_state(1.0, {0.3, 0.5}, {-1.3, -0.5}), PureState::basis("010")};
  for (int k = 0; k < 6; ++k) states.push_back(haar_random_state(1 + k % 4, rng));
  for (const auto& psi : states) {
    const StabilizerBasis k = stabilizer_pure(psi);
    const Eigen::MatrixXd oracle = dense_pure_null_space(psi);
    ASSERT_EQ(k.dim(), oracle.cols());
    if (k.dim() > 0) EXPECT_LT(max_principal_angle(k.coordinate_matrix(), oracle), 1e-9);
    EXPECT_LT(k.max_residual, 1e-10);
  }
}

TEST(StabilizerPure, KnownDimensions) {
  EXPECT_EQ(stabilizer_pure(ghz_state(3, 1.0, 1.0)).dim(), 2);
  EXPECT_EQ(stabilizer_pure(ghz_state(3, 1.0, 1.0)).proj_dims, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(stabilizer_pure(w_state(3)).dim(), 1);
  EXPECT_EQ(stabilizer_pure(singlet_pair_product()).dim(), 6);
  // product basis state: one A per qubit plus phase combinations
  EXPECT_EQ(stabilizer_pure(PureState::basis("01")).dim(), 2);
}

// Property: K_{g psi} = Ad_g K_psi, so dims and projection dims are LU invariant.
TEST(StabilizerPure, DimensionsAreLuInvariant) {
  Rng rng = make_rng(32);
  const std::vector<PureState> states{ghz_state(4, 0.8, 0.6), w_state(4),
                                      canonical_4q_state(1.0, {0.9, -0.7}, {-1.9, 0.7})};
  for (const auto& psi : states) {
    const StabilizerBasis k0 = stabilizer_pure(psi);
    for (int t = 0; t < 10; ++t) {
      const StabilizerBasis k = stabilizer_pure(haar_random_local_unitary(4, rng).apply(psi));
      EXPECT_EQ(k.dim(), k0.dim());
      EXPECT_EQ(k.proj_dims, k0.proj_dims);
      EXPECT_FALSE(k.ill_conditioned);
    }
  }
}

TEST(StabilizerPure, GhzMatchesClosedForm) {
  for (int n : {3, 5}) {
    const StabilizerBasis k = stabilizer_pure(ghz_state(n, 0.9, std::sqrt(1 - 0.81)));
    const Eigen::MatrixXd expected = span_of(ghz_stabilizer(n), false);
    EXPECT_LT(max_principal_angle(k.su2_coordinate_matrix(), expected), 1e-10);
  }
}

TEST(StabilizerDensity, CanonicalFamilyIsDiagonalSu2) {
  const PureState psi = canonical_4q_state(1.0, {0.35, 0.75}, {-1.35, -0.75});
  const StabilizerBasis k = stabilizer_density(to_density(psi));
  ASSERT_EQ(k.dim(), 3);
  EXPECT_EQ(k.proj_dims, (std::vector<int>{3, 3, 3, 3}));
  EXPECT_LT(max_principal_angle(k.coordinate_matrix(), span_of(diagonal_su2(4), false)), 1e-10);
  EXPECT_EQ(algebra_type(k).kind, AlgebraKind::su2);
}

TEST(StabilizerDensity, MaximallyMixedIsEverything) {
  const StabilizerBasis k = stabilizer_density(DensityMatrix::maximally_mixed(2));
  EXPECT_EQ(k.dim(), 6);
}

TEST(PhaseProjection, HoldsOnRandomAndStructuredStates) {
  Rng rng = make_rng(33);
  std::vector<PureState> states{ghz_state(4, 1.0, 1.0), w_state(3), singlet_pair_product(), PureState::basis("011")};
  for (int k = 0; k < 8; ++k) states.push_back(haar_random_state(2 + k % 3, rng));
  for (const auto& psi : states) {
    const ProjectionCheck pc = phase_projection_check(psi);
    EXPECT_TRUE(pc.pass) << "angle " << pc.max_angle;
    EXPECT_EQ(pc.dim_pure, pc.dim_density);
  }
}

TEST(AlgebraType, ClassifiesKnownAlgebras) {
  EXPECT_EQ(algebra_type(ghz_stabilizer(4), false).kind, AlgebraKind::abelian);
  EXPECT_EQ(algebra_type(diagonal_su2(3), false).kind, AlgebraKind::su2);
  const AlgebraType singlets = algebra_type(stabilizer_density(to_density(singlet_pair_product())));
  EXPECT_EQ(singlets.kind, AlgebraKind::other);
  EXPECT_TRUE(singlets.closed);
  // not closed: A_1 and B_1 alone
  const AlgebraType open = algebra_type({embed(2, 1, {1, 0, 0}), embed(2, 1, {0, 1, 0})}, false);
  EXPECT_FALSE(open.closed);
  EXPECT_EQ(open.kind, AlgebraKind::other);
}

TEST(ProjectionDim, CountsSlotRank) {
  const StabilizerBasis k = stabilizer_pure(PureState::basis("01"));
  EXPECT_EQ(projection_dim(k, 1), 1);
  EXPECT_EQ(projection_dim(k, 2), 1);
}
