#include "stabscope/classifier.hpp"
#include "stabscope/equivalence.hpp"

#include <gtest/gtest.h>

using namespace stabscope;

TEST(InfidelityGradient, MatchesCentralDifferences) {
  Rng rng = make_rng(51);
  for (int n : {2, 3, 4}) {
    const PureState psi = haar_random_state(n, rng);
    const PureState phi = haar_random_state(n, rng);
    const LocalUnitary g = haar_random_local_unitary(n, rng);
    const Eigen::VectorXd grad = infidelity_gradient(g, psi, phi);
    const double h = 1e-6;
    for (int k = 0; k < 3 * n; ++k) {
      std::vector<Su2Element> plus(static_cast<std::size_t>(n));
      std::vector<Su2Element> minus(static_cast<std::size_t>(n));
      double* p = &plus[static_cast<std::size_t>(k / 3)].x;
      double* m = &minus[static_cast<std::size_t>(k / 3)].x;
      p[k % 3] = h;
      m[k % 3] = -h;
      const double fd = (infidelity(LocalUnitary::exp_of(plus) * g, psi, phi) -
                         infidelity(LocalUnitary::exp_of(minus) * g, psi, phi)) / (2 * h);
      EXPECT_NEAR(grad(k), fd, 1e-8) << "n " << n << " coordinate " << k;
    }
  }
}

TEST(LuInfidelity, RecoversHiddenLocalUnitary) {
  Rng rng = make_rng(52);
  for (int n : {2, 3, 4, 5}) {
    const PureState psi = haar_random_state(n, rng);
    const PureState phi = haar_random_local_unitary(n, rng).apply(psi);
    OptimizerOptions opt;
    opt.seed = 7;
    const InfidelityResult r = lu_infidelity(psi, phi, opt);
    EXPECT_LT(r.best, 1e-12) << "n " << n;
    // argmin carries the phase that makes the overlap real and positive
    const cplx ov = phi.amplitudes().dot(r.argmin.apply(psi.amplitudes()));
    EXPECT_NEAR(ov.real(), 1.0, 1e-6);
    EXPECT_NEAR(ov.imag(), 0.0, 1e-6);
  }
}

TEST(LuInfidelity, DeterministicForSeed) {
  Rng rng = make_rng(53);
  const PureState psi = haar_random_state(3, rng);
  const PureState phi = haar_random_state(3, rng);
  OptimizerOptions opt;
  opt.restarts = 5;
  opt.seed = 99;
  const InfidelityResult a = lu_infidelity(psi, phi, opt);
  const InfidelityResult b = lu_infidelity(psi, phi, opt);
  EXPECT_EQ(a.per_restart, b.per_restart);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.restarts_used, 5);
}

TEST(LuInfidelity, RejectsMismatchedSizes) {
  EXPECT_THROW(lu_infidelity(w_state(3), w_state(4)), std::invalid_argument);
}

TEST(DecideEquivalence, OrbitPairIsEquivalentWithWitness) {
  Rng rng = make_rng(54);
  const PureState psi = canonical_4q_state(1.0, {0.3, 0.8}, {-1.3, -0.8});
  const LocalUnitary g = haar_random_local_unitary(4, rng);
  const PureState phi = g.apply(psi);
  const EquivVerdict v = decide_equivalence(psi, phi);
  ASSERT_EQ(v.status, EquivStatus::equivalent);
  ASSERT_TRUE(v.witness);
  EXPECT_LT(infidelity(*v.witness, psi, phi), 1e-7);
}

TEST(DecideEquivalence, GhzVersusWSeparatedByStabilizerDimension) {
  const EquivVerdict v = decide_equivalence(ghz_state(3, 1.0, 1.0), w_state(3));
  EXPECT_EQ(v.status, EquivStatus::inequivalent);
  ASSERT_TRUE(v.separator);
  EXPECT_EQ(v.separator->name, "stab_dim");
  EXPECT_EQ(v.separator->lhs, "2");
  EXPECT_EQ(v.separator->rhs, "1");
  EXPECT_FALSE(v.best_infidelity);
}

TEST(DecideEquivalence, ConjugatePairNeverEquivalent) {
  for (double b2 : {0.3, 0.9, 2.0}) {
    const cplx b{0.0, b2};
    const PureState psi = canonical_4q_state(1.0, b, -1.0 - b);
    const PureState phi = canonical_4q_state(1.0, std::conj(b), -1.0 - std::conj(b));
    const EquivVerdict v = decide_equivalence(psi, phi);
    EXPECT_NE(v.status, EquivStatus::equivalent);
  }
}

TEST(DecideEquivalence, DifferentGhzWeightsSeparatedByPurity) {
  const EquivVerdict v = decide_equivalence(ghz_state(3, 0.8, 0.6), ghz_state(3, 0.9, std::sqrt(0.19)));
  EXPECT_EQ(v.status, EquivStatus::inequivalent);
  ASSERT_TRUE(v.separator);
  EXPECT_EQ(v.separator->name.rfind("purity:", 0), 0U);
}

TEST(EquivStatus, StringRoundTrip) {
  for (auto s : {EquivStatus::equivalent, EquivStatus::inequivalent, EquivStatus::unknown}) {
    EXPECT_EQ(equiv_status_from_string(to_string(s)), s);
  }
  EXPECT_THROW(equiv_status_from_string("maybe"), std::invalid_argument);
}
