#include "stabscope/report_json.hpp"

#include <gtest/gtest.h>

using namespace stabscope;

namespace {

template <class T, class Decode>
void expect_round_trip(const T& value, Decode decode) {
  const Json once = encode(value);
  const T back = decode(Json::parse(once.dump()));
  EXPECT_TRUE(back == value) << once.dump(2);
  EXPECT_EQ(encode(back).dump(), once.dump());
}

} // namespace

TEST(ReportJson, LocalUnitary) {
  Rng rng = make_rng(81);
  expect_round_trip(haar_random_local_unitary(3, rng).with_phase(std::polar(1.0, 0.4)), decode_local_unitary);
}

TEST(ReportJson, ClassificationReports) {
  Rng rng = make_rng(82);
  const std::vector<PureState> states{haar_random_local_unitary(3, rng).apply(ghz_state(3, 0.6, 0.8)),
                                      canonical_4q_state(1.0, {0.3, 0.6}, {-1.3, -0.6}), w_state(3),
                                      singlet_pair_product(), PureState::basis("01")};
  for (const auto& psi : states) expect_round_trip(classify(psi), decode_classification);
}

TEST(ReportJson, FixedFieldNames) {
  const Json j = encode(classify(canonical_4q_state(1.0, {0.3, 0.6}, {-1.3, -0.6})));
  for (const char* key : {"verdict", "stab_dim", "proj_dims", "a", "b_re", "b_im", "ambiguous"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const Json g = encode(classify(ghz_state(3, 0.6, 0.8)));
  EXPECT_TRUE(g.contains("alpha"));
  EXPECT_TRUE(g.contains("beta"));
  EXPECT_EQ(g.at("verdict"), "ghz_class");
}

TEST(ReportJson, AnalysisWithInfiniteGap) {
  const AnalysisReport r = analyze(PureState::basis("0"));
  expect_round_trip(r, decode_analysis);
  expect_round_trip(analyze(w_state(3)), decode_analysis);
}

TEST(ReportJson, FingerprintKeys) {
  const InvariantFingerprint f = fingerprint(canonical_4q_state(1.0, {0.3, 0.6}, {-1.3, -0.6}));
  expect_round_trip(f, decode_fingerprint);
  const Json j = encode(f);
  EXPECT_TRUE(j.at("purities").contains("12"));
  EXPECT_TRUE(j.at("poly").contains("3:321:213:231"));
}

TEST(ReportJson, EquivVerdicts) {
  Rng rng = make_rng(83);
  const PureState psi = haar_random_state(3, rng);
  expect_round_trip(decide_equivalence(psi, haar_random_local_unitary(3, rng).apply(psi)), decode_equiv_verdict);
  const EquivVerdict screened = decide_equivalence(ghz_state(3, 1.0, 1.0), w_state(3));
  expect_round_trip(screened, decode_equiv_verdict);
  EXPECT_TRUE(encode(screened).at("best_infidelity").is_null());
}

TEST(ReportJson, Orbit) { expect_round_trip(orbit(ghz_state(3, 1.0, 1.0), 4, 5, kNullTol, 2), decode_orbit); }
