#include "stabscope/classifier.hpp"
#include "stabscope/state_io.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace stabscope;

TEST(StateJson, ParsesAndNormalizes) {
  const PureState psi = parse_state_json(R"({"n": 3, "amplitudes": [
    {"index": "000", "re": 1.0, "im": 0.0},
    {"index": "111", "re": 1.0}
  ]})");
  EXPECT_EQ(psi.qubits(), 3);
  EXPECT_TRUE(psi.was_rescaled());
  EXPECT_NEAR(std::abs(psi.amplitudes()(7)), std::sqrt(0.5), 1e-15);
}

TEST(StateJson, ErrorsNameTheLine) {
  try {
    parse_state_json("{\"n\": 2, \"amplitudes\": [\n{\"index\": \"00\", \"re\": 1},\n{\"index\": \"0x\", \"re\": 1}\n]}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    parse_state_json("{\"n\": 2,\n \"amplitudes\": [\n}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_state_json(R"({"amplitudes": []})"), ParseError);
  EXPECT_THROW(parse_state_json(R"({"n": 1, "amplitudes": [{"index": "0", "re": 0}]})"), ParseError);
  EXPECT_THROW(parse_state_json(R"({"n": 1, "amplitudes": [{"index": "0", "re": 1}, {"index": "0", "re": 1}]})"),
               ParseError);
}

TEST(StateText, ParsesCommentsAndBlankLines) {
  const PureState psi = parse_state_text("# W state\n\n001 1 0\n010 1\n100 1 0 # tail\n");
  EXPECT_EQ(psi.qubits(), 3);
  EXPECT_NEAR(std::abs(psi.amplitudes()(1)), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(StateText, ErrorsNameTheLine) {
  try {
    parse_state_text("00 1 0\n01 abc 0\n");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  try {
    parse_state_text("00 1\n011 1\n");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_state_text("# nothing\n"), ParseError);
}

TEST(StateIo, DimensionGuardBeforeAllocation) {
  EXPECT_THROW(parse_state_json(R"({"n": 40, "amplitudes": []})"), DimensionGuardError);
  EXPECT_THROW(parse_state_text("0000000000000 1\n"), DimensionGuardError);
  EXPECT_THROW(named_state("ghz:13"), DimensionGuardError);
  EXPECT_NO_THROW(named_state("ghz:12"));
}

TEST(StateIo, WriteReadRoundTrip) {
  Rng rng = make_rng(71);
  const PureState psi = haar_random_state(3, rng);
  EXPECT_LT((parse_state(write_state_json(psi)).amplitudes() - psi.amplitudes()).norm(), 1e-15);
  EXPECT_LT((parse_state(write_state_text(psi)).amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(NamedState, BuiltInNames) {
  EXPECT_EQ(named_state("w:3").amplitudes(), w_state(3).amplitudes());
  EXPECT_NEAR(std::abs(named_state("ghz:4:0.8").amplitudes()(0)), 0.8, 1e-15);
  EXPECT_NEAR(std::abs(named_state("ghz:4:0.8").amplitudes()(15)), 0.6, 1e-15);
  EXPECT_EQ(named_state("canon4:1:0.3:0.5").amplitudes(), canonical_4q_state(1.0, {0.3, 0.5}, {-1.3, -0.5}).amplitudes());
  EXPECT_EQ(named_state("singlets").qubits(), 4);
  EXPECT_EQ(named_state("basis:0110").amplitudes()(6), cplx(1.0, 0.0));
  EXPECT_THROW(named_state("ghz:3:1.5"), ParseError);
  EXPECT_THROW(named_state("canon4:1:0.3"), ParseError);
  EXPECT_THROW(named_state("bell"), ParseError);
  EXPECT_THROW(named_state("w:x"), ParseError);
}
