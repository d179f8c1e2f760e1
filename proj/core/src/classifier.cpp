#include "stabscope/classifier.hpp"

#include "stabscope/invariants.hpp"
#include "stabscope/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace stabscope {

namespace {

constexpr double kSupportTol = 1e-8;
constexpr double kNormalTol = 1e-7;

// h in SU(2) with h M h^dag = A for a unit-norm M in su(2).
Mat2 align_to_a(const Su2Element& u) {
  const Mat2 m = u.matrix();
  const Mat2 h_herm = cplx{0.0, -1.0} * m; // eigenvalues -1, +1
  Eigen::SelfAdjointEigenSolver<Mat2> eig(0.5 * (h_herm + h_herm.adjoint()));
  Mat2 cols;
  cols.col(0) = eig.eigenvectors().col(1); // M v = +i v
  cols.col(1) = eig.eigenvectors().col(0); // M v = -i v
  Mat2 h = cols.adjoint();
  return h / std::sqrt(h.determinant());
}

// Multiplies |0..0> and |1..1> amplitudes into positive reals using
// exp(theta A) on qubit 1 and a global phase.
LocalUnitary phase_fix(const CVector& amps, int n) {
  const double t0 = std::arg(amps(0));
  const double t1 = std::arg(amps(amps.size() - 1));
  const double theta = 0.5 * (t1 - t0);
  const LocalUnitary rot = LocalUnitary::single(n, 1, exp_su2({theta, 0.0, 0.0}));
  return rot.with_phase(std::polar(1.0, -0.5 * (t0 + t1)));
}

LocalUnitary all_qubits(int n, const Mat2& f) {
  return LocalUnitary(std::vector<Mat2>(static_cast<std::size_t>(n), f));
}

} // namespace

// ---------------------------------------------------------------------------
// Builders

PureState ghz_state(int n, cplx alpha, cplx beta) {
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  v(0) = alpha;
  v(v.size() - 1) = beta;
  v.normalize();
  return PureState(n, std::move(v));
}

PureState w_state(int n) {
  CVector v = CVector::Zero(Eigen::Index{1} << n);
  for (int j = 0; j < n; ++j) v(Eigen::Index{1} << j) = 1.0;
  v.normalize();
  return PureState(n, std::move(v));
}

CVector canonical_4q_amplitudes(cplx a, cplx b, cplx c) {
  CVector v = CVector::Zero(16);
  v(0b0011) = a;
  v(0b1100) = a;
  v(0b1001) = b;
  v(0b0110) = b;
  v(0b1010) = c;
  v(0b0101) = c;
  return v;
}

PureState canonical_4q_state(cplx a, cplx b, cplx c) {
  CVector v = canonical_4q_amplitudes(a, b, c);
  v.normalize();
  return PureState(4, std::move(v));
}

PureState singlet_pair_product() {
  CVector s = CVector::Zero(4);
  s(0b01) = 1.0;
  s(0b10) = -1.0;
  s.normalize();
  const PureState singlet(2, s);
  return tensor(singlet, singlet);
}

// ---------------------------------------------------------------------------
// GHZ branch

GhzCanonical canonicalize_ghz(const PureState& psi, const StabilizerBasis& k, double tol_null) {
  const int n = psi.qubits();
  if (k.n != n || k.dim() != n - 1 ||
      std::any_of(k.proj_dims.begin(), k.proj_dims.end(), [](int d) { return d != 1; })) {
    throw std::invalid_argument("canonicalize_ghz: needs stabilizer dimension n-1 with all projections 1-dimensional");
  }

  // (1) rotate every projection direction onto A
  std::vector<Mat2> align(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    Eigen::MatrixXd slot(k.dim(), 3);
    for (int r = 0; r < k.dim(); ++r) slot.row(r) = k.elements[static_cast<std::size_t>(r)].part(j).coords().transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(slot, Eigen::ComputeFullV);
    align[static_cast<std::size_t>(j - 1)] = align_to_a(Su2Element::from_coords(svd.matrixV().col(0)));
  }
  LocalUnitary g(std::move(align));
  PureState cur = g.apply(psi);

  // (2) the aligned stabilizer is {sum t_k A_k : sum m_k t_k = 0}
  const StabilizerBasis k1 = stabilizer_pure(cur, tol_null);
  if (k1.dim() != n - 1) throw CanonicalizationError("canonicalize_ghz: stabilizer dimension changed after alignment");
  Eigen::MatrixXd t(k1.dim(), n);
  double off_axis = 0.0;
  for (int r = 0; r < k1.dim(); ++r) {
    for (int j = 1; j <= n; ++j) {
      const Su2Element& s = k1.elements[static_cast<std::size_t>(r)].part(j);
      t(r, j - 1) = s.x;
      off_axis = std::max({off_axis, std::abs(s.y), std::abs(s.z)});
    }
  }
  if (off_axis > kNormalTol) {
    throw CanonicalizationError("canonicalize_ghz: aligned stabilizer leaves span{A_k} (" + std::to_string(off_axis) + ")");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeFullV);
  Eigen::VectorXd m = svd.matrixV().col(n - 1);
  if (m(0) < 0.0) m = -m;
  const double expected = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < m.size(); ++j) {
    if (std::abs(std::abs(m(j)) - expected) > kNormalTol) {
      throw CanonicalizationError("canonicalize_ghz: normal vector entries differ in magnitude");
    }
  }

  // (3) exp(pi/2 C_j) = C_j flips qubit j and the sign of m_j
  std::vector<Mat2> flips(static_cast<std::size_t>(n), Mat2::Identity());
  for (int j = 0; j < n; ++j) {
    if (m(j) < 0.0) flips[static_cast<std::size_t>(j)] = su2_c();
  }
  g = LocalUnitary(flips) * g;
  cur = g.apply(psi);

  // (4) support on |0..0>, |1..1>
  auto off_support = [](const CVector& v) {
    CVector w = v;
    w(0) = 0.0;
    w(w.size() - 1) = 0.0;
    return w.norm();
  };
  if (const double r = off_support(cur.amplitudes()); r > kSupportTol) {
    throw CanonicalizationError("canonicalize_ghz: state not supported on |0..0>,|1..1> (residual " + std::to_string(r) + ")");
  }

  // (5) phases, (6) ordering
  g = phase_fix(cur.amplitudes(), n) * g;
  cur = g.apply(psi);
  if (std::abs(cur.amplitudes()(0)) < std::abs(cur.amplitudes()(cur.dimension() - 1))) {
    g = all_qubits(n, su2_c()) * g;
    cur = g.apply(psi);
    g = phase_fix(cur.amplitudes(), n) * g;
    cur = g.apply(psi);
  }

  GhzCanonical out;
  out.alpha = std::abs(cur.amplitudes()(0));
  out.beta = std::abs(cur.amplitudes()(cur.dimension() - 1));
  out.canonicalizer = g;
  out.normal = m;
  CVector target = CVector::Zero(cur.dimension());
  target(0) = out.alpha;
  target(target.size() - 1) = out.beta;
  out.residual = (cur.amplitudes() - target).norm();
  return out;
}

// ---------------------------------------------------------------------------
// 4-qubit branch

std::string to_string(ConjugationResolution r) {
  switch (r) {
  case ConjugationResolution::real_b: return "real_b";
  case ConjugationResolution::im_p3: return "im_p3";
  case ConjugationResolution::extended_invariants: return "extended_invariants";
  case ConjugationResolution::lu_optimizer: return "lu_optimizer";
  case ConjugationResolution::unresolved: return "unresolved";
  }
  return "unresolved";
}

ConjugationResolution conjugation_resolution_from_string(const std::string& s) {
  for (auto r : {ConjugationResolution::real_b, ConjugationResolution::im_p3, ConjugationResolution::extended_invariants,
                 ConjugationResolution::lu_optimizer, ConjugationResolution::unresolved}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown conjugation resolution '" + s + "'");
}

FourQubitCanonical canonicalize_4q(const PureState& psi, const Canonicalize4qOptions& options) {
  if (psi.qubits() != 4) throw std::invalid_argument("canonicalize_4q: needs a 4-qubit state");

  // (1) norms from the pair invariants
  const PairInvariants inv = pair_invariants(psi);
  if (std::min({inv.i1, inv.i2, inv.i3}) < 1e-9) {
    throw CanonicalizationError("canonicalize_4q: a pair invariant vanishes, so abc = 0");
  }
  const double a = std::sqrt(inv.i1 * inv.i2 / inv.i3);
  const double nb = std::sqrt(inv.i1 * inv.i3 / inv.i2);
  const double nc = std::sqrt(inv.i2 * inv.i3 / inv.i1);

  // (2) triangle a + b + c = 0 with a > 0: |c|^2 = a^2 + |b|^2 + 2 a |b| cos(theta)
  double cos_t = (nc * nc - a * a - nb * nb) / (2.0 * a * nb);
  if (std::abs(cos_t) > 1.0 + 1e-7) {
    throw CanonicalizationError("canonicalize_4q: norms violate the triangle inequality");
  }
  cos_t = std::clamp(cos_t, -1.0, 1.0);
  const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
  const cplx b_plus = nb * cplx{cos_t, sin_t};

  FourQubitCanonical out;
  out.a = a;
  out.im_p3_observed = polynomial_invariant(psi, reference_triple()).imag();
  auto finish = [&out, a](cplx b, ConjugationResolution r) {
    out.b = b;
    out.c = -a - b;
    out.resolution = r;
    out.im_p3_predicted = im_p3_formula(a, b);
    return out;
  };

  // (3) real b: both triangle solutions coincide
  if (nb * sin_t < 1e-9) return finish(cplx{nb * cos_t, 0.0}, ConjugationResolution::real_b);

  // (4) Im P^3 flips sign under b -> conj(b)
  const double f_plus = im_p3_formula(a, b_plus);
  if (std::abs(f_plus) > options.degenerate_tol) {
    const bool plus = std::abs(out.im_p3_observed - f_plus) <= std::abs(out.im_p3_observed + f_plus);
    return finish(plus ? b_plus : std::conj(b_plus), ConjugationResolution::im_p3);
  }

  // (5) degenerate locus
  out.ambiguous = true;
  const PureState cand_plus = canonical_4q_state(a, b_plus, -a - b_plus);
  const PureState cand_minus = canonical_4q_state(a, std::conj(b_plus), -a - std::conj(b_plus));
  double dev_plus = 0.0;
  double dev_minus = 0.0;
  for (const auto& p : permutation_family(3)) {
    const cplx v = polynomial_invariant(psi, p);
    dev_plus = std::max(dev_plus, std::abs(v - polynomial_invariant(cand_plus, p)));
    dev_minus = std::max(dev_minus, std::abs(v - polynomial_invariant(cand_minus, p)));
  }
  const double sep = options.equiv.screen_tol;
  if (std::min(dev_plus, dev_minus) < 0.1 * sep && std::max(dev_plus, dev_minus) > sep) {
    return finish(dev_plus < dev_minus ? b_plus : std::conj(b_plus), ConjugationResolution::extended_invariants);
  }

  const EquivVerdict vp = decide_equivalence(psi, cand_plus, options.equiv);
  const EquivVerdict vm = decide_equivalence(psi, cand_minus, options.equiv);
  const bool ep = vp.status == EquivStatus::equivalent;
  const bool em = vm.status == EquivStatus::equivalent;
  if (ep != em) return finish(ep ? b_plus : std::conj(b_plus), ConjugationResolution::lu_optimizer);

  return finish(b_plus, ConjugationResolution::unresolved);
}

// ---------------------------------------------------------------------------
// Classification

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::ghz_class: return "ghz_class";
  case Verdict::four_qubit_su2: return "four_qubit_su2";
  case Verdict::max_stab_but_unrecognized: return "max_stab_but_unrecognized";
  case Verdict::not_max_stab: return "not_max_stab";
  case Verdict::product: return "product";
  case Verdict::not_covered: return "not_covered";
  }
  return "not_covered";
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::ghz_class, Verdict::four_qubit_su2, Verdict::max_stab_but_unrecognized, Verdict::not_max_stab,
                 Verdict::product, Verdict::not_covered}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

ClassificationReport classify(const PureState& psi, const ClassifyOptions& options) {
  ClassificationReport rep;
  const int n = psi.qubits();
  rep.n = n;
  rep.product_structure = is_product(psi);
  const StabilizerBasis k = stabilizer_pure(psi, options.tol_null);
  rep.stab_dim = k.dim();
  rep.proj_dims = k.proj_dims;
  rep.algebra_type = algebra_type(k).kind;
  rep.ill_conditioned = k.ill_conditioned;
  rep.gap = k.gap;

  if (rep.product_structure.is_product()) {
    rep.verdict = Verdict::product;
    rep.note = "product state; classification theorem applies to nonproduct states only";
    return rep;
  }
  if (n < 3) {
    rep.verdict = Verdict::not_covered;
    rep.note = "fewer than 3 qubits";
    return rep;
  }
  if (rep.stab_dim < n - 1) {
    rep.verdict = Verdict::not_max_stab;
    return rep;
  }

  const auto all_equal = [&rep](int d) {
    return std::all_of(rep.proj_dims.begin(), rep.proj_dims.end(), [d](int x) { return x == d; });
  };
  rep.verdict = Verdict::max_stab_but_unrecognized;
  if (rep.stab_dim > n - 1) {
    rep.note = "stabilizer dimension exceeds n-1 for a nonproduct state";
    return rep;
  }

  if (all_equal(1)) {
    try {
      const GhzCanonical ghz = canonicalize_ghz(psi, k, options.tol_null);
      rep.verdict = Verdict::ghz_class;
      rep.alpha = ghz.alpha;
      rep.beta = ghz.beta;
      rep.canonicalizer = ghz.canonicalizer;
      rep.residual = ghz.residual;
    } catch (const CanonicalizationError& e) {
      rep.note = e.what();
    }
    return rep;
  }

  if (n == 4 && all_equal(3) && rep.algebra_type == AlgebraKind::su2) {
    try {
      Canonicalize4qOptions copt;
      copt.equiv = options.equiv;
      const FourQubitCanonical can = canonicalize_4q(psi, copt);
      rep.verdict = Verdict::four_qubit_su2;
      rep.a = can.a;
      rep.b = can.b;
      rep.c = can.c;
      rep.ambiguous = can.ambiguous;
      rep.resolution = can.resolution;
      if (options.find_4q_canonicalizer) {
        const PureState target = canonical_4q_state(can.a, can.b, can.c);
        OptimizerOptions opt;
        opt.restarts = options.equiv.restarts;
        opt.seed = options.equiv.seed;
        const InfidelityResult r = lu_infidelity(psi, target, opt);
        if (r.best < options.equiv.tol_equiv) {
          rep.canonicalizer = r.argmin;
          rep.residual = (r.argmin.apply(psi.amplitudes()) - target.amplitudes()).norm();
        } else {
          rep.note = "no local unitary onto the canonical form found (best infidelity " + std::to_string(r.best) + ")";
        }
      }
    } catch (const CanonicalizationError& e) {
      rep.verdict = Verdict::max_stab_but_unrecognized;
      rep.note = e.what();
    }
    return rep;
  }

  rep.note = "maximal stabilizer matches neither theorem branch";
  return rep;
}

} // namespace stabscope
