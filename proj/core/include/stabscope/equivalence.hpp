// Numerical local-unitary equivalence: invariant screening followed by
// multi-start fidelity maximization over SU(2)^n.

#pragma once

#include "stabscope/invariants.hpp"
#include "stabscope/lie.hpp"
#include "stabscope/stabilizer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stabscope {

inline constexpr double kEquivTol = 1e-7;
inline constexpr double kScreenTol = 1e-6;

struct OptimizerOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  /// Restarts stop once the best value drops below this.
  double stop_below = 1e-14;
  int max_iterations = 500;
  int memory = 8;
};

struct InfidelityResult {
  double best = 1.0;
  /// argmin, with the global phase chosen so that <phi|g psi> > 0.
  LocalUnitary argmin = LocalUnitary::identity(1);
  int restarts_used = 0;
  std::vector<double> per_restart;
};

/// 1 - |<phi| g psi>|^2 at g.
double infidelity(const LocalUnitary& g, const PureState& psi, const PureState& phi);

/// Gradient of s -> infidelity(exp(s) g, psi, phi) at s = 0, with s laid
/// out as (x, y, z) per qubit.
Eigen::VectorXd infidelity_gradient(const LocalUnitary& g, const PureState& psi, const PureState& phi);

/// Minimizes 1 - |<phi| g psi>|^2 over g in SU(2)^n. Restart 0 starts at
/// the identity; restart k >= 1 starts at a Haar point drawn from stream k
/// of `seed`. Each restart runs L-BFGS in exponential coordinates
/// recentred at the current iterate.
InfidelityResult lu_infidelity(const PureState& psi, const PureState& phi, const OptimizerOptions& options = {});

enum class EquivStatus { equivalent, inequivalent, unknown };

std::string to_string(EquivStatus s);
EquivStatus equiv_status_from_string(const std::string& s);

struct Separator {
  std::string name;
  std::string lhs;
  std::string rhs;
  double difference = 0.0;

  friend bool operator==(const Separator&, const Separator&) = default;
};

struct EquivVerdict {
  EquivStatus status = EquivStatus::unknown;
  std::optional<LocalUnitary> witness;
  std::optional<Separator> separator;
  /// Absent when screening decided before optimization ran.
  std::optional<double> best_infidelity;
  int restarts_used = 0;

  friend bool operator==(const EquivVerdict&, const EquivVerdict&) = default;
};

struct EquivOptions {
  double tol_equiv = kEquivTol;
  double tol_null = kNullTol;
  double screen_tol = kScreenTol;
  int restarts = 20;
  std::uint64_t seed = 0;
};

/// Stabilizer dimensions, then invariant fingerprints, then optimization.
EquivVerdict decide_equivalence(const PureState& psi, const PureState& phi, const EquivOptions& options = {});

/// Screening stage only: a separator when one is found.
std::optional<Separator> screen_inequivalence(const PureState& psi, const PureState& phi, const EquivOptions& options = {});

} // namespace stabscope
