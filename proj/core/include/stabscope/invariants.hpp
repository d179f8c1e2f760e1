// Local-unitary invariants: subsystem purities, the 4-qubit pair
// invariants (I1, I2, I3) and the polynomial family P^m_{sigma,tau,phi}.

#pragma once

#include "stabscope/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stabscope {

/// Largest copy count accepted by polynomial_invariant (16^m terms).
inline constexpr int kMaxPolyCopies = 4;

/// Three permutations of {1..m}. Stored zero-based; keys and strings use
/// one-based images, e.g. "3:321:213:231".
struct PermutationTriple {
  int m = 1;
  std::vector<int> sigma;
  std::vector<int> tau;
  std::vector<int> phi;

  /// Validating constructor from one-based images.
  static PermutationTriple from_images(std::vector<int> sigma, std::vector<int> tau, std::vector<int> phi);
  static PermutationTriple identity(int m);
  static PermutationTriple parse(const std::string& key);
  std::string key() const;

  friend bool operator==(const PermutationTriple&, const PermutationTriple&) = default;
};

/// m = 3, sigma = (3 2 1), tau = (2 1 3), phi = (2 3 1).
PermutationTriple reference_triple();
/// reference_triple with the roles of qubits 3 and 4 exchanged.
PermutationTriple swapped_reference_triple();
/// All (m!)^3 triples for a given m, in lexicographic order.
std::vector<PermutationTriple> permutation_family(int m);

/// tr((tr_A rho)^2) for the pure state; `traced` must be proper and nonempty.
double purity_invariant(const PureState& psi, const QubitSubset& traced);

/// |a|^2, |b|^2, |c|^2 recovered from the three pair purities. On the
/// canonical family, pair (1,2) fixes |a|^2, (1,3) fixes |c|^2 and (1,4)
/// fixes |b|^2 through P = 12 (x - 1/4)^2 + 1/4; the branch of each root
/// is the one compatible with |a|^2 + |b|^2 + |c|^2 = 1/2.
struct CanonicalNorms {
  double a2 = 0.0;
  double b2 = 0.0;
  double c2 = 0.0;
  /// | |a|^2 + |b|^2 + |c|^2 - 1/2 | for the chosen branch.
  double branch_residual = 0.0;
};

CanonicalNorms canonical_norms(const PureState& psi);

struct PairInvariants {
  double i1 = 0.0; ///< |a||b|
  double i2 = 0.0; ///< |a||c|
  double i3 = 0.0; ///< |b||c|

  friend bool operator==(const PairInvariants&, const PairInvariants&) = default;
};

PairInvariants pair_invariants(const PureState& psi);

/// sum over I^1..I^m of c_{I^1}..c_{I^m} conj(c_{J^1})..conj(c_{J^m}) where
/// J^k takes qubit 1 from I^k and qubits 2, 3, 4 from I^{sigma(k)},
/// I^{tau(k)}, I^{phi(k)}.
cplx polynomial_invariant(const PureState& psi, const PermutationTriple& p);

/// -24 a^2 b1 b2 (b1^2 + b2^2 + a b1) with b = b1 + i b2. Equals
/// Im polynomial_invariant(alpha(a,b,c), reference_triple()) on the raw
/// (not renormalized) coefficients; both sides are homogeneous of degree 6.
double im_p3_formula(double a, cplx b);

struct InvariantFingerprint {
  int n = 0;
  /// Keyed by QubitSubset::key() of the kept subsystem; only subsets
  /// containing qubit 1 are stored (the complement has equal purity).
  std::map<std::string, double> purities;
  std::optional<PairInvariants> pair;
  std::map<std::string, cplx> poly;

  friend bool operator==(const InvariantFingerprint&, const InvariantFingerprint&) = default;
};

/// Polynomial triples recorded in a 4-qubit fingerprint: m=1 identity plus
/// the full m=2 and m=3 families.
const std::vector<PermutationTriple>& fingerprint_triples();

InvariantFingerprint fingerprint(const PureState& psi);

struct FingerprintDifference {
  std::string component;
  double lhs = 0.0;
  double rhs = 0.0;
  /// Absolute difference (complex modulus for polynomial entries).
  double difference = 0.0;
  std::string lhs_text;
  std::string rhs_text;
};

/// Component with the largest absolute difference.
FingerprintDifference max_difference(const InvariantFingerprint& a, const InvariantFingerprint& b);

} // namespace stabscope
