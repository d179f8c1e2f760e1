// Dense n-qubit states, density matrices and the multi-index bookkeeping
// shared by every other module.
//
// Basis ordering: the multi-index I = (i_1, ..., i_n) maps to the integer
// sum_k i_k 2^(n-k), so qubit 1 is the most significant bit.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stabscope {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Normalization / Hermiticity tolerance for states and density matrices.
inline constexpr double kNormTol = 1e-10;
/// A reduced state counts as pure when 1 - purity is below this.
inline constexpr double kPureTol = 1e-9;
/// Dense representation limit used by the CLI dimension guard.
inline constexpr int kMaxDenseQubits = 12;
/// Bipartition enumeration limit for is_product.
inline constexpr int kMaxProductQubits = 16;

/// Computational basis label. Qubit labels are one-based.
class MultiIndex {
public:
  MultiIndex(int n, std::uint64_t value);

  static MultiIndex from_bits(const std::vector<int>& bits);
  static MultiIndex from_string(std::string_view bits);

  int qubits() const { return n_; }
  std::uint64_t value() const { return value_; }
  int digit(int j) const;
  std::vector<int> bits() const;
  std::string str() const;

  MultiIndex complement() const;
  MultiIndex flipped(int j) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
  int n_;
  std::uint64_t value_;
};

inline MultiIndex bit_complement(const MultiIndex& index) { return index.complement(); }
inline MultiIndex flip_index(const MultiIndex& index, int j) { return index.flipped(j); }

/// Strictly increasing list of one-based qubit labels.
class QubitSubset {
public:
  QubitSubset(int n, std::vector<int> members);
  static QubitSubset from_mask(int n, std::uint64_t mask);

  int qubits() const { return n_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(int j) const;
  /// Bit mask in basis-ordering convention (qubit 1 is bit n-1).
  std::uint64_t mask() const;
  QubitSubset complement() const;
  /// "12", "134"; labels are comma separated once n exceeds 9.
  std::string key() const;

  friend bool operator==(const QubitSubset&, const QubitSubset&) = default;

private:
  int n_;
  std::vector<int> members_;
};

/// Unit-norm amplitude vector. Unnormalized input is rescaled and the
/// rescaling is recorded rather than rejected.
class PureState {
public:
  PureState(int n, CVector amplitudes);

  int qubits() const { return n_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  cplx amplitude(const MultiIndex& index) const {
    return amplitudes_(static_cast<Eigen::Index>(index.value()));
  }
  bool was_rescaled() const { return rescaled_; }
  double input_norm() const { return input_norm_; }

  static PureState basis(int n, std::uint64_t index);
  static PureState basis(std::string_view bits);

private:
  int n_;
  CVector amplitudes_;
  bool rescaled_ = false;
  double input_norm_ = 1.0;
};

/// Hermitian, unit-trace, positive semidefinite matrix (checked to kNormTol).
class DensityMatrix {
public:
  DensityMatrix(int n, CMatrix entries);

  int qubits() const { return n_; }
  Eigen::Index dimension() const { return entries_.rows(); }
  const CMatrix& entries() const { return entries_; }
  cplx operator()(Eigen::Index row, Eigen::Index col) const { return entries_(row, col); }

  static DensityMatrix maximally_mixed(int n);

private:
  int n_;
  CMatrix entries_;
};

DensityMatrix to_density(const PureState& psi);

/// Traces out `traced`; the result lives on the remaining qubits in their
/// original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& traced);

/// tr(rho^2).
double purity(const DensityMatrix& rho);

/// Purity of the reduced state of `psi` on `kept`, computed from the
/// amplitude matrix without forming the full density matrix.
double reduced_purity(const PureState& psi, const QubitSubset& kept);

/// Amplitudes reshaped to a 2^|rows| x 2^(n-|rows|) matrix with `rows`
/// as the row multi-index.
CMatrix amplitude_matrix(const PureState& psi, const QubitSubset& rows);

struct ProductStructure {
  /// Finest factorization found; a single block means nonproduct.
  std::vector<std::vector<int>> blocks;
  bool is_product() const { return blocks.size() > 1; }
  bool fully_product() const;

  friend bool operator==(const ProductStructure&, const ProductStructure&) = default;
};

ProductStructure is_product(const PureState& psi, double pure_tol = kPureTol);

/// Tensor product of two states, `first` on the leading qubits.
PureState tensor(const PureState& first, const PureState& second);

/// Moves qubit labels: result qubit perm[k] (one-based) takes input qubit k+1.
PureState permute_qubits(const PureState& psi, const std::vector<int>& perm);

double norm_distance(const CVector& a, const CVector& b);

} // namespace stabscope
