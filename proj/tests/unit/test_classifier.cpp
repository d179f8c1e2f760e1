#include "stabscope/classifier.hpp"
#include "stabscope/invariants.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stabscope;

namespace {

struct Normalized {
  double a;
  cplx b;
  cplx c;
};

Normalized normalized(double a, cplx b) {
  const double s = canonical_4q_amplitudes(a, b, -a - b).norm();
  return {a / s, b / s, (-a - b) / s};
}

} // namespace

TEST(Builders, NormalizedShapes) {
  EXPECT_NEAR(std::abs(ghz_state(3, 1.0, 1.0).amplitudes()(7)), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(std::abs(w_state(3).amplitudes()(4)), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(canonical_4q_state(1.0, {0.2, 0.1}, {-1.2, -0.1}).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(singlet_pair_product().amplitudes()(0b0101)), 0.5, 1e-15);
}

TEST(CanonicalizeGhz, RoundTripsThroughRandomOrbit) {
  Rng rng = make_rng(61);
  for (int n : {3, 4, 6}) {
    const PureState base = ghz_state(n, 0.6, std::polar(0.8, 1.1));
    for (int k = 0; k < 5; ++k) {
      const PureState moved = haar_random_local_unitary(n, rng).apply(base);
      const GhzCanonical g = canonicalize_ghz(moved, stabilizer_pure(moved));
      EXPECT_NEAR(g.alpha, 0.8, 1e-9);
      EXPECT_NEAR(g.beta, 0.6, 1e-9);
      EXPECT_LT(g.residual, 1e-9);
      CVector target = CVector::Zero(base.dimension());
      target(0) = 0.8;
      target(target.size() - 1) = 0.6;
      EXPECT_LT((g.canonicalizer.apply(moved.amplitudes()) - target).norm(), 1e-9);
      EXPECT_LT(g.canonicalizer.special_unitary_error(), 1e-12);
    }
  }
}

TEST(CanonicalizeGhz, RejectsWrongPrecondition) {
  const PureState w = w_state(3);
  EXPECT_THROW(canonicalize_ghz(w, stabilizer_pure(w)), std::invalid_argument);
}

TEST(Canonicalize4q, ImP3BranchRecoversConstruction) {
  Rng rng = make_rng(62);
  for (const cplx b : {cplx{0.35, 0.5}, cplx{0.35, -0.5}, cplx{-1.3, 0.7}, cplx{0.9, -1.2}}) {
    const Normalized want = normalized(1.0, b);
    const PureState moved = haar_random_local_unitary(4, rng).apply(canonical_4q_state(1.0, b, -1.0 - b));
    const FourQubitCanonical can = canonicalize_4q(moved);
    EXPECT_EQ(can.resolution, ConjugationResolution::im_p3);
    EXPECT_FALSE(can.ambiguous);
    EXPECT_NEAR(can.a, want.a, 1e-7);
    EXPECT_LT(std::abs(can.b - want.b), 1e-7);
    EXPECT_LT(std::abs(can.c - want.c), 1e-7);
  }
}

TEST(Canonicalize4q, RealB) {
  const FourQubitCanonical can = canonicalize_4q(canonical_4q_state(1.0, 0.4, -1.4));
  EXPECT_EQ(can.resolution, ConjugationResolution::real_b);
  EXPECT_NEAR(can.b.imag(), 0.0, 1e-9);
}

// b1 = 0 makes Im P^3 vanish for both candidates; the extended family decides.
TEST(Canonicalize4q, ImaginaryBResolvedByExtendedInvariants) {
  Rng rng = make_rng(63);
  for (const cplx b : {cplx{0.0, 0.6}, cplx{0.0, -1.1}}) {
    const Normalized want = normalized(1.0, b);
    const PureState moved = haar_random_local_unitary(4, rng).apply(canonical_4q_state(1.0, b, -1.0 - b));
    const FourQubitCanonical can = canonicalize_4q(moved);
    EXPECT_TRUE(can.ambiguous);
    EXPECT_EQ(can.resolution, ConjugationResolution::extended_invariants);
    EXPECT_LT(std::abs(can.b - want.b), 1e-6);
  }
}

// b1^2 + b2^2 + a b1 = 0 is the other degenerate locus.
TEST(Canonicalize4q, CircleLocusResolved) {
  const double a = 0.5;
  const cplx b{-0.25, 0.25}; // (-1/4)^2 + (1/4)^2 - 1/8 = 0
  EXPECT_NEAR(im_p3_formula(a, b), 0.0, 1e-15);
  const Normalized want = normalized(a, b);
  const FourQubitCanonical can = canonicalize_4q(canonical_4q_state(a, b, -a - b));
  EXPECT_TRUE(can.ambiguous);
  EXPECT_NE(can.resolution, ConjugationResolution::unresolved);
  EXPECT_LT(std::abs(can.b - want.b), 1e-6);
}

TEST(Canonicalize4q, VanishingCoefficientRejected) {
  EXPECT_THROW(canonicalize_4q(canonical_4q_state(1.0, -1.0, 0.0)), CanonicalizationError);
}

TEST(Classify, GhzOrbitPoint) {
  Rng rng = make_rng(64);
  const PureState psi = haar_random_local_unitary(4, rng).apply(ghz_state(4, 1.0, 1.0));
  const ClassificationReport r = classify(psi);
  EXPECT_EQ(r.verdict, Verdict::ghz_class);
  EXPECT_EQ(r.stab_dim, 3);
  ASSERT_TRUE(r.alpha && r.beta && r.canonicalizer);
  EXPECT_NEAR(*r.alpha, std::sqrt(0.5), 1e-9);
  EXPECT_LT(*r.residual, 1e-9);
}

TEST(Classify, FourQubitFamilyWithCanonicalizer) {
  Rng rng = make_rng(65);
  const PureState psi = haar_random_local_unitary(4, rng).apply(canonical_4q_state(1.0, {0.35, 0.5}, {-1.35, -0.5}));
  const ClassificationReport r = classify(psi);
  EXPECT_EQ(r.verdict, Verdict::four_qubit_su2);
  EXPECT_EQ(r.algebra_type, AlgebraKind::su2);
  ASSERT_TRUE(r.canonicalizer);
  EXPECT_LT(*r.residual, 1e-6);
}

TEST(Classify, ProductSmallAndNegativeCases) {
  const ClassificationReport prod = classify(tensor(ghz_state(3, 1.0, 1.0), PureState::basis("0")));
  EXPECT_EQ(prod.verdict, Verdict::product);
  EXPECT_EQ(prod.product_structure.blocks, (std::vector<std::vector<int>>{{1, 2, 3}, {4}}));
  EXPECT_FALSE(prod.alpha);

  EXPECT_EQ(classify(singlet_pair_product()).verdict, Verdict::product);
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0;
  EXPECT_EQ(classify(PureState(2, bell)).verdict, Verdict::not_covered);

  const ClassificationReport w = classify(w_state(3));
  EXPECT_EQ(w.verdict, Verdict::not_max_stab);
  EXPECT_EQ(w.stab_dim, 1);
}

TEST(Verdict, StringRoundTrip) {
  for (auto v : {Verdict::ghz_class, Verdict::four_qubit_su2, Verdict::max_stab_but_unrecognized, Verdict::not_max_stab,
                 Verdict::product, Verdict::not_covered}) {
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  }
  for (auto r : {ConjugationResolution::real_b, ConjugationResolution::im_p3, ConjugationResolution::extended_invariants,
                 ConjugationResolution::lu_optimizer, ConjugationResolution::unresolved}) {
    EXPECT_EQ(conjugation_resolution_from_string(to_string(r)), r);
  }
}
