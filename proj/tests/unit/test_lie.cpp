#include "stabscope/lie.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace stabscope;

namespace {

Mat2 comm(const Mat2& x, const Mat2& y) { return x * y - y * x; }

// Scaling and squaring around a truncated Taylor series.
Mat2 taylor_exp(const Mat2& m) {
  int squarings = 0;
  Mat2 x = m;
  while (x.norm() > 0.25) {
    x /= 2.0;
    ++squarings;
  }
  Mat2 sum = Mat2::Identity();
  Mat2 term = Mat2::Identity();
  for (int k = 1; k < 20; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

CMatrix dense(const LocalUnitary& g) {
  CMatrix m = CMatrix::Identity(1, 1);
  for (const Mat2& f : g.factors()) m = kron(m, f);
  return g.global_phase() * m;
}

Su2Element random_su2(Rng& rng, double scale = 1.0) {
  return {scale * standard_normal(rng), scale * standard_normal(rng), scale * standard_normal(rng)};
}

} // namespace

TEST(Su2Basis, BracketRelations) {
  EXPECT_LT((comm(su2_a(), su2_b()) - 2.0 * su2_c()).norm(), 1e-15);
  EXPECT_LT((comm(su2_b(), su2_c()) - 2.0 * su2_a()).norm(), 1e-15);
  EXPECT_LT((comm(su2_c(), su2_a()) - 2.0 * su2_b()).norm(), 1e-15);
}

TEST(Su2Element, BracketMatchesMatrixCommutator) {
  Rng rng = make_rng(21);
  for (int k = 0; k < 50; ++k) {
    const Su2Element x = random_su2(rng);
    const Su2Element y = random_su2(rng);
    EXPECT_LT((bracket(x, y).matrix() - comm(x.matrix(), y.matrix())).norm(), 1e-13);
    const Su2Element back = Su2Element::from_matrix(x.matrix());
    EXPECT_NEAR(back.x, x.x, 1e-15);
    EXPECT_NEAR(back.y, x.y, 1e-15);
    EXPECT_NEAR(back.z, x.z, 1e-15);
  }
}

TEST(ExpSu2, MatchesTaylorSeries) {
  Rng rng = make_rng(22);
  for (double scale : {0.0, 1e-14, 1e-6, 0.3, 2.0, 7.0}) {
    for (int k = 0; k < 10; ++k) {
      const Su2Element s = random_su2(rng, scale);
      const Mat2 e = exp_su2(s);
      EXPECT_LT((e - taylor_exp(s.matrix())).norm(), 1e-12) << "scale " << scale;
      EXPECT_LT((e * e.adjoint() - Mat2::Identity()).norm(), 1e-14);
      EXPECT_NEAR(std::abs(e.determinant() - 1.0), 0.0, 1e-14);
    }
  }
}

TEST(ExpSu2, QuarterTurnOfCFlipsBasis) {
  const Mat2 e = exp_su2({0.0, 0.0, std::numbers::pi / 2});
  EXPECT_LT((e - su2_c()).norm(), 1e-15);
}

TEST(LocalUnitary, ApplyMatchesDenseKronecker) {
  Rng rng = make_rng(23);
  for (int n = 1; n <= 5; ++n) {
    const LocalUnitary g = haar_random_local_unitary(n, rng).with_phase(std::polar(1.0, 0.7));
    const PureState psi = haar_random_state(n, rng);
    EXPECT_LT((g.apply(psi.amplitudes()) - dense(g) * psi.amplitudes()).norm(), 1e-13);
    const DensityMatrix rho = to_density(psi);
    EXPECT_LT((g.conjugate(rho).entries() - dense(g) * rho.entries() * dense(g).adjoint()).norm(), 1e-13);
    EXPECT_LT(g.special_unitary_error(), 1e-13);
  }
}

TEST(LocalUnitary, CompositionAndInverse) {
  Rng rng = make_rng(24);
  const LocalUnitary g = haar_random_local_unitary(3, rng);
  const LocalUnitary h = haar_random_local_unitary(3, rng);
  const PureState psi = haar_random_state(3, rng);
  EXPECT_LT((((g * h).apply(psi.amplitudes())) - g.apply(h.apply(psi.amplitudes()))).norm(), 1e-14);
  EXPECT_LT(((g.inverse() * g).apply(psi.amplitudes()) - psi.amplitudes()).norm(), 1e-14);
}

TEST(HaarSu2, MomentsOfFirstEntry) {
  // For Haar SU(2), |U_00|^2 is uniform on [0, 1].
  Rng rng = make_rng(25);
  double mean = 0.0;
  double second = 0.0;
  const int samples = 20000;
  for (int k = 0; k < samples; ++k) {
    const double p = std::norm(haar_su2(rng)(0, 0));
    mean += p;
    second += p * p;
  }
  EXPECT_NEAR(mean / samples, 0.5, 0.01);
  EXPECT_NEAR(second / samples, 1.0 / 3.0, 0.01);
}

TEST(Infinitesimal, MatchesDenseGenerator) {
  Rng rng = make_rng(26);
  for (int n = 1; n <= 4; ++n) {
    LieElement x(n);
    x.set_phase(standard_normal(rng));
    for (int j = 1; j <= n; ++j) x.part(j) = random_su2(rng);
    const PureState psi = haar_random_state(n, rng);
    EXPECT_LT((apply_infinitesimal(x, psi) - x.matrix() * psi.amplitudes()).norm(), 1e-13);
  }
}

TEST(CommutatorAction, MatchesDenseCommutator) {
  Rng rng = make_rng(27);
  for (int n = 1; n <= 4; ++n) {
    LieElement x(n);
    for (int j = 1; j <= n; ++j) x.part(j) = random_su2(rng);
    const DensityMatrix rho = to_density(haar_random_state(n, rng));
    const CMatrix xm = x.matrix();
    EXPECT_LT((commutator_action(x, rho) - (xm * rho.entries() - rho.entries() * xm)).norm(), 1e-13);
  }
  LieElement with_phase(2);
  with_phase.set_phase(1.0);
  EXPECT_THROW(commutator_action(with_phase, DensityMatrix::maximally_mixed(2)), std::invalid_argument);
}

TEST(Zeta, DiagonalCommutatorEntries) {
  Rng rng = make_rng(28);
  const int n = 3;
  const std::vector<double> t{0.3, -1.1, 2.0};
  LieElement x(n);
  for (int j = 1; j <= n; ++j) x.part(j) = {t[static_cast<std::size_t>(j - 1)], 0.0, 0.0};
  const DensityMatrix rho = to_density(haar_random_state(n, rng));
  const CMatrix lhs = commutator_action(x, rho);
  for (std::uint64_t i = 0; i < 8; ++i) {
    for (std::uint64_t j = 0; j < 8; ++j) {
      const cplx rhs = zeta(MultiIndex(n, i), MultiIndex(n, j), t) * rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      EXPECT_LT(std::abs(lhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - rhs), 1e-13);
    }
  }
  EXPECT_EQ(zeta(MultiIndex(n, 5), MultiIndex(n, 5), t), cplx(0.0, 0.0));
}

TEST(LieElement, CoordinateRoundTripAndBracket) {
  Rng rng = make_rng(29);
  Eigen::VectorXd c(7);
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = standard_normal(rng);
  const LieElement x = LieElement::from_coords(c, true);
  EXPECT_LT((x.coords(true) - c).norm(), 1e-15);
  const LieElement y = LieElement::from_coords(c.tail(6), false);
  const LieElement b = bracket(x, y);
  EXPECT_EQ(b.phase(), 0.0);
  EXPECT_LT((b.matrix() - (x.matrix() * y.matrix() - y.matrix() * x.matrix())).norm(), 1e-12);
}
