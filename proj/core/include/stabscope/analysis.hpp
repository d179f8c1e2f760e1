// Per-state stabilizer report and LU orbit sampling.

#pragma once

#include "stabscope/invariants.hpp"
#include "stabscope/stabilizer.hpp"
#include "stabscope/tensor.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stabscope {

/// K_rho is only formed up to this many qubits (its action matrix has 4^n rows).
inline constexpr int kMaxDensityQubits = 8;

struct AnalysisReport {
  int n = 0;
  ProductStructure product_structure;
  int stab_dim = 0;
  std::vector<int> proj_dims;
  AlgebraKind algebra_type = AlgebraKind::abelian;
  double gap = 0.0;
  bool ill_conditioned = false;
  std::vector<double> singular_values;
  std::optional<int> stab_dim_density;
  std::optional<std::vector<int>> proj_dims_density;
  /// Largest principal angle between P K_psi and K_rho.
  std::optional<double> projection_angle;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&);
};

AnalysisReport analyze(const PureState& psi, double tol_null = kNullTol);

struct OrbitRow {
  int sample = 0;
  int stab_dim = 0;
  std::vector<int> proj_dims;
  bool ill_conditioned = false;
  /// Largest fingerprint component change relative to the input state.
  double drift = 0.0;
  std::string drift_component;

  friend bool operator==(const OrbitRow&, const OrbitRow&) = default;
};

struct OrbitReport {
  int n = 0;
  int stab_dim = 0;
  std::vector<int> proj_dims;
  std::vector<OrbitRow> rows;
  double max_drift = 0.0;
  /// Every row reproduces the input's stab_dim and proj_dims.
  bool consistent = true;

  friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

/// Sample k applies the Haar local unitary from stream k + 1 of `seed`.
OrbitReport orbit(const PureState& psi, int samples, std::uint64_t seed, double tol_null = kNullTol,
                  unsigned workers = 0);

} // namespace stabscope
