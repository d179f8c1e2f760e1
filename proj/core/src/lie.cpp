#include "stabscope/lie.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stabscope {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_slot(int n, int j) {
  if (j < 1 || j > n) {
    throw std::out_of_range("qubit slot " + std::to_string(j) + " out of range 1.." + std::to_string(n));
  }
}

// Applies `op` to qubit j of every column of `m`.
CMatrix apply_to_columns(const Mat2& op, int j, int n, const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.col(c) = apply_single_qubit(op, j, n, m.col(c));
  return out;
}

} // namespace

Mat2 su2_a() {
  Mat2 m;
  m << kI, 0.0, 0.0, -kI;
  return m;
}

Mat2 su2_b() {
  Mat2 m;
  m << 0.0, 1.0, -1.0, 0.0;
  return m;
}

Mat2 su2_c() {
  Mat2 m;
  m << 0.0, kI, kI, 0.0;
  return m;
}

Mat2 Su2Element::matrix() const {
  Mat2 m;
  m << cplx{0.0, x}, cplx{y, z}, cplx{-y, z}, cplx{0.0, -x};
  return m;
}

double Su2Element::norm() const { return std::sqrt(x * x + y * y + z * z); }

Su2Element Su2Element::from_matrix(const Mat2& m) {
  // A, B, C are orthogonal under Re tr(X^dag Y) with squared norm 2.
  auto coeff = [&m](const Mat2& basis) { return (basis.adjoint() * m).trace().real() / 2.0; };
  return {coeff(su2_a()), coeff(su2_b()), coeff(su2_c())};
}

Su2Element operator+(const Su2Element& a, const Su2Element& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

Su2Element operator*(double s, const Su2Element& a) { return {s * a.x, s * a.y, s * a.z}; }

Su2Element bracket(const Su2Element& a, const Su2Element& b) {
  return Su2Element::from_coords(2.0 * a.coords().cross(b.coords()));
}

// ---------------------------------------------------------------------------
// LieElement

LieElement LieElement::from_coords(const Eigen::VectorXd& coords, bool with_phase) {
  const Eigen::Index offset = with_phase ? 1 : 0;
  if ((coords.size() - offset) % 3 != 0 || coords.size() - offset < 3) {
    throw std::invalid_argument("coordinate vector has wrong length for u(1)+su(2)^n");
  }
  const auto n = static_cast<int>((coords.size() - offset) / 3);
  LieElement x(n);
  if (with_phase) x.phase_ = coords(0);
  for (int j = 0; j < n; ++j) {
    x.parts_[static_cast<std::size_t>(j)] = {coords(offset + 3 * j), coords(offset + 3 * j + 1),
                                             coords(offset + 3 * j + 2)};
  }
  return x;
}

const Su2Element& LieElement::part(int j) const {
  check_slot(qubits(), j);
  return parts_[static_cast<std::size_t>(j - 1)];
}

Su2Element& LieElement::part(int j) {
  check_slot(qubits(), j);
  return parts_[static_cast<std::size_t>(j - 1)];
}

Eigen::VectorXd LieElement::coords(bool with_phase) const {
  const Eigen::Index offset = with_phase ? 1 : 0;
  Eigen::VectorXd v(3 * qubits() + offset);
  if (with_phase) v(0) = phase_;
  for (int j = 0; j < qubits(); ++j) {
    const auto& s = parts_[static_cast<std::size_t>(j)];
    v.segment<3>(offset + 3 * j) << s.x, s.y, s.z;
  }
  return v;
}

CMatrix LieElement::matrix() const {
  const int n = qubits();
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix out = CMatrix::Identity(dim, dim) * cplx{0.0, -phase_};
  for (int j = 1; j <= n; ++j) out += apply_to_columns(part(j).matrix(), j, n, CMatrix::Identity(dim, dim));
  return out;
}

LieElement operator+(const LieElement& a, const LieElement& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("Lie elements have different n");
  std::vector<Su2Element> parts(a.parts());
  for (int j = 1; j <= a.qubits(); ++j) parts[static_cast<std::size_t>(j - 1)] = a.part(j) + b.part(j);
  return {a.phase() + b.phase(), std::move(parts)};
}

LieElement operator*(double s, const LieElement& a) {
  std::vector<Su2Element> parts(a.parts());
  for (auto& p : parts) p = s * p;
  return {s * a.phase(), std::move(parts)};
}

LieElement bracket(const LieElement& a, const LieElement& b) {
  if (a.qubits() != b.qubits()) throw std::invalid_argument("Lie elements have different n");
  std::vector<Su2Element> parts(a.parts().size());
  for (int j = 1; j <= a.qubits(); ++j) parts[static_cast<std::size_t>(j - 1)] = bracket(a.part(j), b.part(j));
  return {0.0, std::move(parts)};
}

LieElement embed(int n, int j, const Su2Element& s) {
  check_slot(n, j);
  LieElement x(n);
  x.part(j) = s;
  return x;
}

// ---------------------------------------------------------------------------
// Actions

CVector apply_single_qubit(const Mat2& op, int j, int n, const CVector& v) {
  check_slot(n, j);
  if (v.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("vector dimension mismatch");
  const Eigen::Index stride = Eigen::Index{1} << (n - j);
  CVector out(v.size());
  for (Eigen::Index base = 0; base < v.size(); base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const cplx v0 = v(k);
      const cplx v1 = v(k + stride);
      out(k) = op(0, 0) * v0 + op(0, 1) * v1;
      out(k + stride) = op(1, 0) * v0 + op(1, 1) * v1;
    }
  }
  return out;
}

CVector apply_infinitesimal(const LieElement& x, const CVector& psi) {
  const int n = x.qubits();
  if (psi.size() != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("apply_infinitesimal: element has " + std::to_string(n) +
                                " slots but state dimension is " + std::to_string(psi.size()));
  }
  CVector out = cplx{0.0, -x.phase()} * psi;
  for (int j = 1; j <= n; ++j) {
    const Su2Element& s = x.part(j);
    if (s.x == 0.0 && s.y == 0.0 && s.z == 0.0) continue;
    out += apply_single_qubit(s.matrix(), j, n, psi);
  }
  return out;
}

CVector apply_infinitesimal(const LieElement& x, const PureState& psi) {
  return apply_infinitesimal(x, psi.amplitudes());
}

CMatrix commutator_action(const LieElement& x, const CMatrix& rho) {
  if (x.phase() != 0.0) throw std::invalid_argument("commutator_action: phase part must be zero");
  const int n = x.qubits();
  if (rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows()) {
    throw std::invalid_argument("commutator_action: dimension mismatch");
  }
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  const CMatrix rho_t = rho.transpose();
  for (int j = 1; j <= n; ++j) {
    const Su2Element& s = x.part(j);
    if (s.x == 0.0 && s.y == 0.0 && s.z == 0.0) continue;
    const Mat2 m = s.matrix();
    out += apply_to_columns(m, j, n, rho);
    // rho X = (X^T rho^T)^T
    out -= apply_to_columns(m.transpose(), j, n, rho_t).transpose();
  }
  return out;
}

CMatrix commutator_action(const LieElement& x, const DensityMatrix& rho) {
  return commutator_action(x, rho.entries());
}

cplx zeta(const MultiIndex& i, const MultiIndex& j, const std::vector<double>& t) {
  const int n = i.qubits();
  if (j.qubits() != n || static_cast<int>(t.size()) != n) {
    throw std::invalid_argument("zeta: length mismatch");
  }
  double sum = 0.0;
  for (int l = 1; l <= n; ++l) {
    if (i.digit(l) != j.digit(l)) sum += (i.digit(l) == 0 ? 1.0 : -1.0) * t[static_cast<std::size_t>(l - 1)];
  }
  return {0.0, 2.0 * sum};
}

Mat2 exp_su2(const Su2Element& s) {
  // M^2 = -|s|^2 Id for M in su(2) with this basis.
  const double r = s.norm();
  const Mat2 m = s.matrix();
  if (r < 1e-12) return Mat2::Identity() + m;
  return std::cos(r) * Mat2::Identity() + (std::sin(r) / r) * m;
}

// ---------------------------------------------------------------------------
// LocalUnitary

LocalUnitary::LocalUnitary(std::vector<Mat2> factors, cplx global_phase)
    : factors_(std::move(factors)), global_phase_(global_phase) {
  if (factors_.empty()) throw std::invalid_argument("local unitary needs at least one factor");
}

LocalUnitary LocalUnitary::identity(int n) {
  return LocalUnitary(std::vector<Mat2>(static_cast<std::size_t>(n), Mat2::Identity()));
}

LocalUnitary LocalUnitary::exp_of(const std::vector<Su2Element>& generators) {
  std::vector<Mat2> f;
  f.reserve(generators.size());
  for (const auto& s : generators) f.push_back(exp_su2(s));
  return LocalUnitary(std::move(f));
}

LocalUnitary LocalUnitary::single(int n, int j, const Mat2& factor) {
  check_slot(n, j);
  LocalUnitary g = identity(n);
  g.factors_[static_cast<std::size_t>(j - 1)] = factor;
  return g;
}

const Mat2& LocalUnitary::factor(int j) const {
  check_slot(qubits(), j);
  return factors_[static_cast<std::size_t>(j - 1)];
}

CVector LocalUnitary::apply(const CVector& psi) const {
  const int n = qubits();
  if (psi.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("local unitary: dimension mismatch");
  CVector out = psi;
  for (int j = 1; j <= n; ++j) {
    const Mat2& f = factors_[static_cast<std::size_t>(j - 1)];
    if (f.isIdentity(0.0)) continue;
    out = apply_single_qubit(f, j, n, out);
  }
  return global_phase_ * out;
}

PureState LocalUnitary::apply(const PureState& psi) const {
  return PureState(psi.qubits(), apply(psi.amplitudes()));
}

DensityMatrix LocalUnitary::conjugate(const DensityMatrix& rho) const {
  const int n = qubits();
  if (rho.qubits() != n) throw std::invalid_argument("local unitary: dimension mismatch");
  CMatrix m = rho.entries();
  for (int j = 1; j <= n; ++j) {
    const Mat2& f = factors_[static_cast<std::size_t>(j - 1)];
    m = apply_to_columns(f, j, n, m);
    // (g m g^dag) = (conj(g) (g m)^T)^T
    m = apply_to_columns(f.conjugate(), j, n, CMatrix(m.transpose())).transpose();
  }
  return DensityMatrix(n, std::move(m));
}

LocalUnitary LocalUnitary::operator*(const LocalUnitary& other) const {
  if (other.qubits() != qubits()) throw std::invalid_argument("local unitary: qubit count mismatch");
  std::vector<Mat2> f(factors_.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = factors_[k] * other.factors_[k];
  return LocalUnitary(std::move(f), global_phase_ * other.global_phase_);
}

LocalUnitary LocalUnitary::inverse() const {
  std::vector<Mat2> f(factors_.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = factors_[k].adjoint();
  return LocalUnitary(std::move(f), std::conj(global_phase_));
}

LocalUnitary LocalUnitary::with_phase(cplx phase) const {
  LocalUnitary g = *this;
  g.global_phase_ = phase;
  return g;
}

double LocalUnitary::special_unitary_error() const {
  double worst = std::abs(std::abs(global_phase_) - 1.0);
  for (const auto& f : factors_) {
    worst = std::max(worst, (f.adjoint() * f - Mat2::Identity()).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(f.determinant() - cplx{1.0, 0.0}));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Random sampling

Mat2 haar_su2(Rng& rng) {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  Mat2 z;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(r, c) = kInvSqrt2 * cplx{re, im};
    }
  }
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  const Mat2 r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const cplx d = r(k, k);
    q.col(k) *= d / std::abs(d);
  }
  return q / std::sqrt(q.determinant());
}

LocalUnitary haar_random_local_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_random_local_unitary: n must be >= 1");
  std::vector<Mat2> f;
  f.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) f.push_back(haar_su2(rng));
  return LocalUnitary(std::move(f));
}

LocalUnitary haar_random_local_unitary(int n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return haar_random_local_unitary(n, rng);
}

PureState haar_random_state(int n, Rng& rng) {
  CVector v(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v(k) = cplx{re, im};
  }
  return PureState(n, std::move(v));
}

} // namespace stabscope
