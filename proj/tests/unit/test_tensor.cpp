#include "stabscope/lie.hpp"
#include "stabscope/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stabscope;

namespace {

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

} // namespace

TEST(MultiIndex, QubitOneIsMostSignificant) {
  const MultiIndex i = MultiIndex::from_string("100");
  EXPECT_EQ(i.value(), 4U);
  EXPECT_EQ(i.digit(1), 1);
  EXPECT_EQ(i.digit(3), 0);
  EXPECT_EQ(i.str(), "100");
  EXPECT_EQ(i.complement().str(), "011");
  EXPECT_EQ(flip_index(i, 3).str(), "101");
  EXPECT_EQ(MultiIndex::from_bits({0, 1, 1}).value(), 3U);
}

TEST(MultiIndex, RejectsBadInput) {
  EXPECT_THROW(MultiIndex::from_string("012"), std::invalid_argument);
  EXPECT_THROW(MultiIndex(2, 4), std::out_of_range);
}

TEST(QubitSubset, KeyMaskAndComplement) {
  const QubitSubset s(4, {1, 3});
  EXPECT_EQ(s.key(), "13");
  EXPECT_EQ(s.mask(), 0b1010U);
  EXPECT_EQ(s.complement().members(), (std::vector<int>{2, 4}));
  EXPECT_EQ(QubitSubset::from_mask(4, 0b1010), s);
  EXPECT_EQ(QubitSubset(3, {3, 1}).members(), (std::vector<int>{1, 3}));
  EXPECT_THROW(QubitSubset(3, {2, 2}), std::invalid_argument);
  EXPECT_THROW(QubitSubset(3, {4}), std::out_of_range);
}

TEST(PureState, RescalesUnnormalizedInput) {
  CVector v(2);
  v << 3.0, 4.0;
  const PureState psi(1, v);
  EXPECT_TRUE(psi.was_rescaled());
  EXPECT_NEAR(psi.input_norm(), 5.0, 1e-15);
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(PureState(1, CVector::Zero(2)), std::invalid_argument);
  EXPECT_THROW(PureState(2, CVector::Ones(2)), std::invalid_argument);
}

TEST(DensityMatrix, ValidatesHermitianUnitTrace) {
  CMatrix m = CMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);
  m(0, 1) = 0.1;
  m /= 2.0;
  EXPECT_THROW(DensityMatrix(1, m), std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix::maximally_mixed(3));
}

// Oracle: purity of a reduced state equals the sum of fourth powers of the
// Schmidt coefficients across the cut.
TEST(PartialTrace, PurityMatchesSchmidtCoefficients) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const PureState psi = haar_random_state(n, rng);
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      const QubitSubset kept = QubitSubset::from_mask(n, mask);
      const Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(amplitude_matrix(psi, kept)).singularValues();
      const double oracle = s.array().pow(4).sum();
      EXPECT_NEAR(reduced_purity(psi, kept), oracle, 1e-12);
      EXPECT_NEAR(purity(partial_trace(to_density(psi), kept.complement())), oracle, 1e-12);
    }
  }
}

TEST(PartialTrace, TracePreservedAndProductFactorsRecovered) {
  Rng rng = make_rng(12);
  const PureState a = haar_random_state(1, rng);
  const PureState b = haar_random_state(2, rng);
  const DensityMatrix rho = partial_trace(to_density(tensor(a, b)), QubitSubset(3, {2, 3}));
  EXPECT_NEAR(rho.entries().trace().real(), 1.0, 1e-14);
  EXPECT_NEAR((rho.entries() - to_density(a).entries()).norm(), 0.0, 1e-14);
}

TEST(Tensor, MatchesKroneckerOracle) {
  Rng rng = make_rng(13);
  const PureState a = haar_random_state(2, rng);
  const PureState b = haar_random_state(1, rng);
  EXPECT_LT(norm_distance(tensor(a, b).amplitudes(), kron(a.amplitudes(), b.amplitudes())), 1e-15);
}

TEST(IsProduct, FindsFinestFactorization) {
  Rng rng = make_rng(14);
  const PureState ent = haar_random_state(2, rng);
  const PureState single = haar_random_state(1, rng);
  // qubits 2 and 4 entangled, 1 and 3 free
  const PureState psi = permute_qubits(tensor(tensor(ent, single), haar_random_state(1, rng)), {2, 4, 1, 3});
  const ProductStructure p = is_product(psi);
  ASSERT_TRUE(p.is_product());
  EXPECT_EQ(p.blocks, (std::vector<std::vector<int>>{{1}, {2, 4}, {3}}));
  EXPECT_FALSE(p.fully_product());
  EXPECT_FALSE(is_product(haar_random_state(4, rng)).is_product());
  EXPECT_TRUE(is_product(PureState::basis("0110")).fully_product());
}

TEST(PermuteQubits, MovesLabels) {
  const PureState psi = permute_qubits(PureState::basis("100"), {3, 1, 2});
  EXPECT_NEAR(std::abs(psi.amplitude(MultiIndex::from_string("001"))), 1.0, 1e-15);
  EXPECT_THROW(permute_qubits(psi, {1, 1, 2}), std::invalid_argument);
}
