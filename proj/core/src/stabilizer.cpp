#include "stabscope/stabilizer.hpp"

#include "stabscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabscope {

namespace {

const std::array<Mat2, 3>& su2_basis() {
  static const std::array<Mat2, 3> basis{su2_a(), su2_b(), su2_c()};
  return basis;
}

void write_realified(Eigen::MatrixXd& m, Eigen::Index col, const CVector& v) {
  const Eigen::Index len = v.size();
  m.col(col).head(len) = v.real();
  m.col(col).tail(len) = v.imag();
}

// Sign convention: first coordinate with magnitude above 1e-12 is positive.
void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-12) {
      if (v(k) < 0.0) v = -v;
      return;
    }
  }
}

bool precedes(const Eigen::VectorXd& a, const Eigen::VectorXd& b, bool with_phase) {
  constexpr double eps = 1e-12;
  if (with_phase) {
    const double ta = std::abs(a(0));
    const double tb = std::abs(b(0));
    if (std::abs(ta - tb) > eps) return ta > tb;
  }
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (std::abs(a(k) - b(k)) > eps) return a(k) < b(k);
  }
  return false;
}

StabilizerBasis assemble(Ambient ambient, int n, const NullSpace& ns, double tol) {
  StabilizerBasis k;
  k.ambient = ambient;
  k.n = n;
  k.singular_values = ns.singular_values;
  k.gap = ns.gap;
  k.ill_conditioned = ns.gap < kGapThreshold;

  std::vector<Eigen::VectorXd> cols;
  for (Eigen::Index c = 0; c < ns.basis.cols(); ++c) {
    Eigen::VectorXd v = ns.basis.col(c);
    fix_sign(v);
    cols.push_back(std::move(v));
  }
  const bool with_phase = ambient == Ambient::pure;
  std::stable_sort(cols.begin(), cols.end(),
                   [with_phase](const auto& a, const auto& b) { return precedes(a, b, with_phase); });
  for (const auto& v : cols) k.elements.push_back(LieElement::from_coords(v, with_phase));
  k.proj_dims.resize(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) k.proj_dims[static_cast<std::size_t>(j - 1)] = projection_dim(k, j, tol);
  return k;
}

} // namespace

std::string to_string(Ambient a) { return a == Ambient::pure ? "pure" : "density"; }

std::string to_string(AlgebraKind k) {
  switch (k) {
  case AlgebraKind::abelian: return "abelian";
  case AlgebraKind::su2: return "su2";
  case AlgebraKind::other: return "other";
  }
  return "other";
}

Eigen::MatrixXd StabilizerBasis::coordinate_matrix() const {
  const Eigen::Index rows = 3 * n + (with_phase() ? 1 : 0);
  Eigen::MatrixXd m(rows, dim());
  for (int c = 0; c < dim(); ++c) m.col(c) = elements[static_cast<std::size_t>(c)].coords(with_phase());
  return m;
}

Eigen::MatrixXd StabilizerBasis::su2_coordinate_matrix() const {
  Eigen::MatrixXd m(3 * n, dim());
  for (int c = 0; c < dim(); ++c) m.col(c) = elements[static_cast<std::size_t>(c)].coords(false);
  return m;
}

Eigen::MatrixXd pure_action_matrix(const PureState& psi) {
  const int n = psi.qubits();
  const CVector& c = psi.amplitudes();
  Eigen::MatrixXd m(2 * c.size(), 3 * n + 1);
  write_realified(m, 0, cplx{0.0, -1.0} * c);
  for (int j = 1; j <= n; ++j) {
    for (int e = 0; e < 3; ++e) {
      write_realified(m, 1 + 3 * (j - 1) + e, apply_single_qubit(su2_basis()[static_cast<std::size_t>(e)], j, n, c));
    }
  }
  return m;
}

Eigen::MatrixXd density_action_matrix(const DensityMatrix& rho) {
  const int n = rho.qubits();
  const Eigen::Index entries = rho.dimension() * rho.dimension();
  Eigen::MatrixXd m(2 * entries, 3 * n);
  for (int j = 1; j <= n; ++j) {
    for (int e = 0; e < 3; ++e) {
      Su2Element s;
      (e == 0 ? s.x : e == 1 ? s.y : s.z) = 1.0;
      const CMatrix comm = commutator_action(embed(n, j, s), rho);
      write_realified(m, 3 * (j - 1) + e, comm.reshaped());
    }
  }
  return m;
}

StabilizerBasis stabilizer_pure(const PureState& psi, double tol) {
  const NullSpace ns = null_space(pure_action_matrix(psi), tol);
  StabilizerBasis k = assemble(Ambient::pure, psi.qubits(), ns, tol);
  for (const auto& x : k.elements) {
    k.max_residual = std::max(k.max_residual, apply_infinitesimal(x, psi).norm());
  }
  return k;
}

StabilizerBasis stabilizer_density(const DensityMatrix& rho, double tol) {
  const NullSpace ns = null_space(density_action_matrix(rho), tol);
  StabilizerBasis k = assemble(Ambient::density, rho.qubits(), ns, tol);
  for (const auto& x : k.elements) {
    k.max_residual = std::max(k.max_residual, commutator_action(x, rho).norm());
  }
  return k;
}

int projection_dim(const StabilizerBasis& k, int j, double tol) {
  if (j < 1 || j > k.n) throw std::out_of_range("projection_dim: qubit " + std::to_string(j) + " out of range");
  if (k.dim() == 0) return 0;
  Eigen::MatrixXd slot(k.dim(), 3);
  for (int r = 0; r < k.dim(); ++r) slot.row(r) = k.elements[static_cast<std::size_t>(r)].part(j).coords().transpose();
  return static_cast<int>(numerical_rank(slot, tol));
}

ProjectionCheck phase_projection_check(const PureState& psi, double tol) {
  const StabilizerBasis kp = stabilizer_pure(psi, tol);
  const StabilizerBasis kr = stabilizer_density(to_density(psi), tol);
  ProjectionCheck out;
  out.dim_pure = kp.dim();
  out.dim_density = kr.dim();
  out.proj_pure = kp.proj_dims;
  out.proj_density = kr.proj_dims;
  const Eigen::MatrixXd projected = orthonormal_span(kp.su2_coordinate_matrix(), 1e-6);
  out.max_angle = max_principal_angle(projected, kr.coordinate_matrix());
  out.pass = out.dim_pure == out.dim_density && projected.cols() == out.dim_pure &&
             out.proj_pure == out.proj_density && out.max_angle < kAlgebraTol;
  return out;
}

Eigen::MatrixXd span_of(const std::vector<LieElement>& elements, bool with_phase) {
  if (elements.empty()) return Eigen::MatrixXd(0, 0);
  const Eigen::Index rows = elements.front().coords(with_phase).size();
  Eigen::MatrixXd m(rows, static_cast<Eigen::Index>(elements.size()));
  for (std::size_t c = 0; c < elements.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = elements[c].coords(with_phase);
  return orthonormal_span(m, 1e-10);
}

namespace {

AlgebraType classify_brackets(const Eigen::MatrixXd& basis, bool with_phase) {
  AlgebraType out;
  const Eigen::Index d = basis.cols();
  std::vector<LieElement> e;
  for (Eigen::Index c = 0; c < d; ++c) e.push_back(LieElement::from_coords(basis.col(c), with_phase));

  out.structure.assign(static_cast<std::size_t>(d), std::vector<Eigen::VectorXd>(static_cast<std::size_t>(d)));
  double max_bracket = 0.0;
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const Eigen::VectorXd br = bracket(e[static_cast<std::size_t>(a)], e[static_cast<std::size_t>(b)]).coords(with_phase);
      const Eigen::VectorXd coeffs = basis.transpose() * br;
      out.closure_residual = std::max(out.closure_residual, (br - basis * coeffs).norm());
      max_bracket = std::max(max_bracket, br.norm());
      out.structure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = coeffs;
    }
  }
  out.closed = out.closure_residual < kAlgebraTol;

  // ad_a(e_b) = [e_a, e_b]; Killing(a, b) = tr(ad_a ad_b).
  std::vector<Eigen::MatrixXd> ad(static_cast<std::size_t>(d), Eigen::MatrixXd::Zero(d, d));
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) ad[static_cast<std::size_t>(a)].col(b) = out.structure[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  out.killing = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) out.killing(a, b) = (ad[static_cast<std::size_t>(a)] * ad[static_cast<std::size_t>(b)]).trace();
  }

  if (!out.closed) {
    out.kind = AlgebraKind::other;
  } else if (max_bracket < kAlgebraTol) {
    out.kind = AlgebraKind::abelian;
  } else if (d == 3) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (out.killing + out.killing.transpose()));
    out.kind = eig.eigenvalues().maxCoeff() < -kAlgebraTol ? AlgebraKind::su2 : AlgebraKind::other;
  } else {
    out.kind = AlgebraKind::other;
  }
  return out;
}

} // namespace

AlgebraType algebra_type(const StabilizerBasis& k) {
  return classify_brackets(k.coordinate_matrix(), k.with_phase());
}

AlgebraType algebra_type(const std::vector<LieElement>& elements, bool with_phase) {
  if (elements.empty()) return AlgebraType{};
  return classify_brackets(span_of(elements, with_phase), with_phase);
}

std::vector<LieElement> diagonal_su2(int n) {
  std::vector<LieElement> out;
  for (int e = 0; e < 3; ++e) {
    LieElement x(n);
    for (int j = 1; j <= n; ++j) {
      Su2Element s;
      (e == 0 ? s.x : e == 1 ? s.y : s.z) = 1.0;
      x.part(j) = s;
    }
    out.push_back(x);
  }
  return out;
}

std::vector<LieElement> ghz_stabilizer(int n) {
  std::vector<LieElement> out;
  for (int j = 2; j <= n; ++j) {
    LieElement x(n);
    x.part(1).x = 1.0;
    x.part(j).x = -1.0;
    out.push_back(x);
  }
  return out;
}

} // namespace stabscope
