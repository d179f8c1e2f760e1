// Classification of nonproduct states whose stabilizer has the maximum
// dimension n-1: the GHZ branch (all projections 1-dimensional) and the
// 4-qubit su(2) branch (all projections 3-dimensional).

#pragma once

#include "stabscope/equivalence.hpp"
#include "stabscope/stabilizer.hpp"
#include "stabscope/tensor.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabscope {

/// Raised when a canonicalization step fails its numerical postcondition.
class CanonicalizationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// alpha|0...0> + beta|1...1>, normalized.
PureState ghz_state(int n, cplx alpha, cplx beta);
/// Equal superposition of the n single-excitation kets.
PureState w_state(int n);
/// a(|0011>+|1100>) + b(|1001>+|0110>) + c(|1010>+|0101>), normalized.
PureState canonical_4q_state(cplx a, cplx b, cplx c);
/// Raw (unnormalized) amplitudes of the same family.
CVector canonical_4q_amplitudes(cplx a, cplx b, cplx c);
/// (|01>-|10>)/sqrt2 on qubits (1,2) and (3,4).
PureState singlet_pair_product();

/// The canonical pair and the local unitary g with g psi = alpha|0..0> + beta|1..1>.
struct GhzCanonical {
  double alpha = 0.0; ///< alpha >= beta > 0, alpha^2 + beta^2 = 1
  double beta = 0.0;
  LocalUnitary canonicalizer = LocalUnitary::identity(1);
  /// || g psi - (alpha|0..0> + beta|1..1>) ||.
  double residual = 0.0;
  /// Normal vector (m_1..m_n) of the aligned stabilizer, unit length.
  Eigen::VectorXd normal;
};

/// Precondition: K has dimension n-1 and every projection dimension is 1.
GhzCanonical canonicalize_ghz(const PureState& psi, const StabilizerBasis& k, double tol_null = kNullTol);

enum class ConjugationResolution { real_b, im_p3, extended_invariants, lu_optimizer, unresolved };

std::string to_string(ConjugationResolution r);
ConjugationResolution conjugation_resolution_from_string(const std::string& s);

struct FourQubitCanonical {
  double a = 0.0;
  cplx b{0.0, 0.0};
  cplx c{0.0, 0.0};
  /// Set when Im P^3 cannot distinguish b from conj(b) although b is not
  /// real (b1 = 0 or b1^2 + b2^2 + a b1 = 0).
  bool ambiguous = false;
  ConjugationResolution resolution = ConjugationResolution::real_b;
  double im_p3_observed = 0.0;
  double im_p3_predicted = 0.0;
};

struct Canonicalize4qOptions {
  /// |Im P^3| below this on normalized coefficients counts as degenerate.
  double degenerate_tol = 1e-6;
  EquivOptions equiv;
};

FourQubitCanonical canonicalize_4q(const PureState& psi, const Canonicalize4qOptions& options = {});

enum class Verdict { ghz_class, four_qubit_su2, max_stab_but_unrecognized, not_max_stab, product, not_covered };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ClassificationReport {
  int n = 0;
  ProductStructure product_structure;
  int stab_dim = 0;
  std::vector<int> proj_dims;
  AlgebraKind algebra_type = AlgebraKind::abelian;
  bool ill_conditioned = false;
  double gap = 0.0;
  Verdict verdict = Verdict::not_max_stab;
  // ghz_class
  std::optional<double> alpha;
  std::optional<double> beta;
  // four_qubit_su2
  std::optional<double> a;
  std::optional<cplx> b;
  std::optional<cplx> c;
  std::optional<bool> ambiguous;
  std::optional<ConjugationResolution> resolution;
  std::optional<LocalUnitary> canonicalizer;
  std::optional<double> residual;
  std::string note;

  friend bool operator==(const ClassificationReport&, const ClassificationReport&) = default;
};

struct ClassifyOptions {
  double tol_null = kNullTol;
  EquivOptions equiv;
  /// Search for an explicit LU map onto the 4-qubit canonical form.
  bool find_4q_canonicalizer = true;
};

ClassificationReport classify(const PureState& psi, const ClassifyOptions& options = {});

} // namespace stabscope
