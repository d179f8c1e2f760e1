#include "stabscope/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stabscope {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 62) {
    throw std::invalid_argument("qubit count must be in 1..62, got " + std::to_string(n));
  }
}

std::uint64_t bit_of(int n, int j) { return std::uint64_t{1} << (n - j); }

// Positions (as basis-value bit masks) of the given qubits, in label order.
std::vector<std::uint64_t> qubit_masks(int n, const std::vector<int>& labels) {
  std::vector<std::uint64_t> out;
  out.reserve(labels.size());
  for (int j : labels) out.push_back(bit_of(n, j));
  return out;
}

// Scatters the bits of `local` (most significant first) onto `masks`.
std::uint64_t scatter(std::uint64_t local, const std::vector<std::uint64_t>& masks) {
  std::uint64_t out = 0;
  const std::size_t k = masks.size();
  for (std::size_t p = 0; p < k; ++p) {
    if ((local >> (k - 1 - p)) & 1U) out |= masks[p];
  }
  return out;
}

std::vector<std::uint64_t> scatter_table(const std::vector<std::uint64_t>& masks) {
  std::vector<std::uint64_t> table(std::size_t{1} << masks.size());
  for (std::uint64_t v = 0; v < table.size(); ++v) table[v] = scatter(v, masks);
  return table;
}

} // namespace

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(int n, std::uint64_t value) : n_(n), value_(value) {
  check_qubit_count(n);
  if (n < 64 && (value >> n) != 0) {
    throw std::out_of_range("multi-index value out of range for " + std::to_string(n) + " qubits");
  }
}

MultiIndex MultiIndex::from_bits(const std::vector<int>& bits) {
  std::uint64_t v = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("multi-index digits must be 0 or 1");
    v = (v << 1) | static_cast<std::uint64_t>(b);
  }
  return MultiIndex(static_cast<int>(bits.size()), v);
}

MultiIndex MultiIndex::from_string(std::string_view bits) {
  std::vector<int> digits;
  digits.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bitstring may only contain 0 and 1: '" + std::string(bits) + "'");
    }
    digits.push_back(ch - '0');
  }
  return from_bits(digits);
}

int MultiIndex::digit(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("qubit label " + std::to_string(j) + " out of range");
  return static_cast<int>((value_ >> (n_ - j)) & 1U);
}

std::vector<int> MultiIndex::bits() const {
  std::vector<int> out(static_cast<std::size_t>(n_));
  for (int j = 1; j <= n_; ++j) out[static_cast<std::size_t>(j - 1)] = digit(j);
  return out;
}

std::string MultiIndex::str() const {
  std::string s;
  for (int j = 1; j <= n_; ++j) s.push_back(static_cast<char>('0' + digit(j)));
  return s;
}

MultiIndex MultiIndex::complement() const {
  const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
  return MultiIndex(n_, value_ ^ all);
}

MultiIndex MultiIndex::flipped(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("qubit label " + std::to_string(j) + " out of range");
  return MultiIndex(n_, value_ ^ bit_of(n_, j));
}

// ---------------------------------------------------------------------------
// QubitSubset

QubitSubset::QubitSubset(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
  check_qubit_count(n);
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::invalid_argument("qubit subset contains duplicates");
  }
  for (int j : members_) {
    if (j < 1 || j > n) throw std::out_of_range("qubit label " + std::to_string(j) + " out of range");
  }
}

QubitSubset QubitSubset::from_mask(int n, std::uint64_t mask) {
  std::vector<int> members;
  for (int j = 1; j <= n; ++j) {
    if (mask & bit_of(n, j)) members.push_back(j);
  }
  return QubitSubset(n, std::move(members));
}

bool QubitSubset::contains(int j) const {
  return std::binary_search(members_.begin(), members_.end(), j);
}

std::uint64_t QubitSubset::mask() const {
  std::uint64_t m = 0;
  for (int j : members_) m |= bit_of(n_, j);
  return m;
}

QubitSubset QubitSubset::complement() const {
  std::vector<int> rest;
  for (int j = 1; j <= n_; ++j) {
    if (!contains(j)) rest.push_back(j);
  }
  return QubitSubset(n_, std::move(rest));
}

std::string QubitSubset::key() const {
  std::string s;
  for (std::size_t p = 0; p < members_.size(); ++p) {
    if (n_ > 9 && p > 0) s.push_back(',');
    s += std::to_string(members_[p]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(int n, CVector amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n);
  if (amplitudes_.size() != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("state of " + std::to_string(n) + " qubits needs " +
                                std::to_string(Eigen::Index{1} << n) + " amplitudes, got " +
                                std::to_string(amplitudes_.size()));
  }
  if (!amplitudes_.allFinite()) throw std::invalid_argument("state amplitudes must be finite");
  input_norm_ = amplitudes_.norm();
  if (input_norm_ == 0.0) throw std::invalid_argument("state vector is zero");
  if (std::abs(input_norm_ - 1.0) > kNormTol) {
    rescaled_ = true;
  }
  amplitudes_ /= input_norm_;
}

PureState PureState::basis(int n, std::uint64_t index) {
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(n, std::move(v));
}

PureState PureState::basis(std::string_view bits) {
  const MultiIndex idx = MultiIndex::from_string(bits);
  return basis(idx.qubits(), idx.value());
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(int n, CMatrix entries) : n_(n), entries_(std::move(entries)) {
  check_qubit_count(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("density matrix must be " + std::to_string(dim) + "x" +
                                std::to_string(dim));
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kNormTol * scale) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - cplx{1.0, 0.0}) > kNormTol) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  // Symmetrize away rounding so downstream Hermitian solvers see exact input.
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
  if (dim <= 256) {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(entries_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kNormTol) {
      throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  return DensityMatrix(n, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix to_density(const PureState& psi) {
  const CVector& c = psi.amplitudes();
  return DensityMatrix(psi.qubits(), c * c.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& traced) {
  const int n = rho.qubits();
  if (traced.qubits() != n) throw std::invalid_argument("subset and density matrix disagree on n");
  if (traced.size() == 0 || static_cast<int>(traced.size()) == n) {
    throw std::invalid_argument("traced subset must be nonempty and proper");
  }
  const QubitSubset kept = traced.complement();
  const auto kept_table = scatter_table(qubit_masks(n, kept.members()));
  const auto traced_table = scatter_table(qubit_masks(n, traced.members()));
  const auto dk = static_cast<Eigen::Index>(kept_table.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  const CMatrix& m = rho.entries();
  for (Eigen::Index r = 0; r < dk; ++r) {
    for (Eigen::Index c = 0; c < dk; ++c) {
      cplx acc{0.0, 0.0};
      for (std::uint64_t t : traced_table) {
        acc += m(static_cast<Eigen::Index>(kept_table[static_cast<std::size_t>(r)] | t),
                 static_cast<Eigen::Index>(kept_table[static_cast<std::size_t>(c)] | t));
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(static_cast<int>(kept.size()), std::move(out));
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.entries().squaredNorm();
}

CMatrix amplitude_matrix(const PureState& psi, const QubitSubset& rows) {
  const int n = psi.qubits();
  if (rows.qubits() != n) throw std::invalid_argument("subset and state disagree on n");
  const auto row_table = scatter_table(qubit_masks(n, rows.members()));
  const auto col_table = scatter_table(qubit_masks(n, rows.complement().members()));
  CMatrix m(static_cast<Eigen::Index>(row_table.size()), static_cast<Eigen::Index>(col_table.size()));
  const CVector& c = psi.amplitudes();
  for (std::size_t r = 0; r < row_table.size(); ++r) {
    for (std::size_t k = 0; k < col_table.size(); ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) =
          c(static_cast<Eigen::Index>(row_table[r] | col_table[k]));
    }
  }
  return m;
}

double reduced_purity(const PureState& psi, const QubitSubset& kept) {
  if (kept.size() == 0 || static_cast<int>(kept.size()) == psi.qubits()) return 1.0;
  const CMatrix m = amplitude_matrix(psi, kept);
  // Use the smaller Gram matrix; both have the same nonzero spectrum.
  const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
  return gram.squaredNorm();
}

bool ProductStructure::fully_product() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.size() == 1; });
}

ProductStructure is_product(const PureState& psi, double pure_tol) {
  const int n = psi.qubits();
  if (n > kMaxProductQubits) {
    throw std::invalid_argument("is_product: bipartition enumeration limited to " +
                                std::to_string(kMaxProductQubits) + " qubits");
  }
  // block[q] = intersection of all separable sets containing q. Separable
  // sets of a pure state are closed under complement and intersection.
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> block(static_cast<std::size_t>(n), all);
  const std::uint64_t first = bit_of(n, 1);
  for (std::uint64_t mask = 1; mask < all; ++mask) {
    if (!(mask & first)) continue; // each bipartition once
    const QubitSubset s = QubitSubset::from_mask(n, mask);
    if (1.0 - reduced_purity(psi, s) >= pure_tol) continue;
    for (int q = 1; q <= n; ++q) {
      auto& b = block[static_cast<std::size_t>(q - 1)];
      b &= (mask & bit_of(n, q)) ? mask : (all ^ mask);
    }
  }
  ProductStructure out;
  std::uint64_t seen = 0;
  for (int q = 1; q <= n; ++q) {
    if (seen & bit_of(n, q)) continue;
    const std::uint64_t b = block[static_cast<std::size_t>(q - 1)];
    seen |= b;
    out.blocks.push_back(QubitSubset::from_mask(n, b).members());
  }
  return out;
}

PureState tensor(const PureState& first, const PureState& second) {
  const CVector& a = first.amplitudes();
  const CVector& b = second.amplitudes();
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return PureState(first.qubits() + second.qubits(), std::move(out));
}

PureState permute_qubits(const PureState& psi, const std::vector<int>& perm) {
  const int n = psi.qubits();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length mismatch");
  std::vector<int> check = perm;
  std::sort(check.begin(), check.end());
  for (int k = 0; k < n; ++k) {
    if (check[static_cast<std::size_t>(k)] != k + 1) throw std::invalid_argument("not a permutation");
  }
  CVector out = CVector::Zero(psi.dimension());
  for (Eigen::Index v = 0; v < psi.dimension(); ++v) {
    std::uint64_t w = 0;
    for (int k = 1; k <= n; ++k) {
      if (static_cast<std::uint64_t>(v) & bit_of(n, k)) w |= bit_of(n, perm[static_cast<std::size_t>(k - 1)]);
    }
    out(static_cast<Eigen::Index>(w)) = psi.amplitudes()(v);
  }
  return PureState(n, std::move(out));
}

double norm_distance(const CVector& a, const CVector& b) { return (a - b).norm(); }

} // namespace stabscope
