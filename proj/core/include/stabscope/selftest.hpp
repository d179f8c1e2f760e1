// Property-based acceptance suite shared by `stabscope selftest` and the
// acceptance test binary.

#pragma once

#include "stabscope/equivalence.hpp"
#include "stabscope/stabilizer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace stabscope {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured quantities; independent of timing and scheduling.
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 0;
  double tol_null = kNullTol;
  double tol_equiv = kEquivTol;
  /// Restarts for the conjugate-pair optimizer runs.
  int uniqueness_restarts = 100;
  unsigned workers = 0;
  /// Wall-time budget for the whole suite, seconds.
  double time_budget = 300.0;
};

struct SelftestReport {
  std::uint64_t seed = 0;
  /// The numbered criteria followed by the total wall-time check.
  std::vector<CriterionResult> criteria;
  double total_seconds = 0.0;

  bool pass() const;
};

inline constexpr int kCriterionCount = 11;

std::string criterion_name(int id);
/// Runs criterion `id` in 1..kCriterionCount.
CriterionResult run_criterion(int id, const SelftestOptions& options = {});
SelftestReport run_selftest(const SelftestOptions& options = {});

} // namespace stabscope
