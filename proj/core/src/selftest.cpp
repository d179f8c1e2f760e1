#include "stabscope/selftest.hpp"

#include "stabscope/classifier.hpp"
#include "stabscope/invariants.hpp"
#include "stabscope/lie.hpp"
#include "stabscope/linalg.hpp"
#include "stabscope/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace stabscope {

namespace {

using Clock = std::chrono::steady_clock;

// Stream offsets keep every criterion on its own generators.
constexpr std::uint64_t kStreamGhz = 100;
constexpr std::uint64_t kStreamGrid = 200;
constexpr std::uint64_t kStreamHaar = 300;
constexpr std::uint64_t kStreamZeta = 400;
constexpr std::uint64_t kStreamUnentangled = 500;
constexpr std::uint64_t kStreamRoundTrip = 600;
constexpr std::uint64_t kStream4q = 700;
constexpr std::uint64_t kStreamInvariance = 800;
constexpr std::uint64_t kStreamNegative = 900;
constexpr std::uint64_t kStreamUniqueness = 1000;

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

bool all_equal(const std::vector<int>& v, int value) {
  return std::all_of(v.begin(), v.end(), [value](int x) { return x == value; });
}

struct GhzSample {
  int n;
  cplx alpha;
  cplx beta;
  PureState state;
};

// Criterion 1 inputs: for each n, 20 (alpha, beta) pairs times 20 orbit points.
std::vector<GhzSample> ghz_samples(std::uint64_t seed) {
  std::vector<GhzSample> out;
  for (int n : {3, 4, 5, 6, 8}) {
    Rng pick = make_rng(seed, kStreamGhz + static_cast<std::uint64_t>(n));
    const std::uint64_t orbit_seed = derive_seed(seed, kStreamGhz + 50 + static_cast<std::uint64_t>(n));
    for (int p = 0; p < 20; ++p) {
      const double theta = uniform(pick, 0.1, std::numbers::pi / 2 - 0.1);
      const double phi = uniform(pick, 0.0, 2.0 * std::numbers::pi);
      const cplx alpha = std::cos(theta);
      const cplx beta = std::polar(std::sin(theta), phi);
      const PureState base = ghz_state(n, alpha, beta);
      for (int k = 0; k < 20; ++k) {
        Rng rng = make_rng(orbit_seed, static_cast<std::uint64_t>(20 * p + k));
        out.push_back({n, alpha, beta, haar_random_local_unitary(n, rng).apply(base)});
      }
    }
  }
  return out;
}

struct GridPoint {
  double a; // raw, before normalization
  cplx b;
  cplx c() const { return -a - b; }
  double scale() const { return std::sqrt(2.0 * (a * a + std::norm(b) + std::norm(c()))); }
};

// 5 x 10 grid with a = 1; every point has abc != 0.
std::vector<GridPoint> su2_grid() {
  std::vector<GridPoint> g;
  for (double b1 : {-1.3, -0.75, -0.3, 0.35, 0.9}) {
    for (double b2 : {-1.2, -0.7, -0.3, 0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5}) g.push_back({1.0, {b1, b2}});
  }
  return g;
}

// Criterion 2 inputs: each grid state followed by its 20 orbit points.
std::vector<PureState> grid_states(std::uint64_t seed, std::vector<int>* base_index = nullptr) {
  std::vector<PureState> out;
  const auto grid = su2_grid();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const PureState base = canonical_4q_state(grid[p].a, grid[p].b, grid[p].c());
    if (base_index) base_index->push_back(static_cast<int>(out.size()));
    out.push_back(base);
    for (int k = 0; k < 20; ++k) {
      Rng rng = make_rng(derive_seed(seed, kStreamGrid), 20 * p + static_cast<std::uint64_t>(k));
      out.push_back(haar_random_local_unitary(4, rng).apply(base));
    }
  }
  return out;
}

DensityMatrix random_density(int n, Rng& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = {standard_normal(rng), standard_normal(rng)};
  }
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, rho);
}

// dim(K intersect su(2) at slot j), K given by orthonormal coordinate columns.
int slot_intersection_dim(const Eigen::MatrixXd& q, int j) {
  if (q.cols() == 0) return 0;
  Eigen::MatrixXd outside(q.rows() - 3, q.cols());
  Eigen::Index r = 0;
  for (Eigen::Index row = 0; row < q.rows(); ++row) {
    if (row / 3 != j - 1) outside.row(r++) = q.row(row);
  }
  return static_cast<int>(q.cols() - numerical_rank(outside, 1e-7));
}

// ---------------------------------------------------------------------------

CriterionResult c1_ghz_dimension(const SelftestOptions& o) {
  CriterionResult r;
  int bad = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  const auto samples = ghz_samples(o.seed);
  for (const auto& s : samples) {
    const StabilizerBasis k = stabilizer_pure(s.state, o.tol_null);
    min_gap = std::min(min_gap, k.gap);
    if (k.dim() != s.n - 1 || !all_equal(k.proj_dims, 1) || !(k.gap > kGapThreshold)) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(samples.size()) + " states, " + std::to_string(bad) + " off (dim n-1, proj 1), min gap " +
             sci(min_gap);
  return r;
}

CriterionResult c2_su2_family(const SelftestOptions& o) {
  CriterionResult r;
  const Eigen::MatrixXd v = span_of(diagonal_su2(4), false);
  std::vector<int> base;
  const auto states = grid_states(o.seed, &base);
  int bad = 0;
  double worst_angle = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const StabilizerBasis k = stabilizer_density(to_density(states[i]), o.tol_null);
    bool ok = k.dim() == 3 && all_equal(k.proj_dims, 3);
    if (std::find(base.begin(), base.end(), static_cast<int>(i)) != base.end()) {
      const double angle = max_principal_angle(k.coordinate_matrix(), v);
      worst_angle = std::max(worst_angle, angle);
      ok = ok && algebra_type(k).kind == AlgebraKind::su2 && angle < kAlgebraTol;
    }
    if (!ok) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(base.size()) + " grid points + " + std::to_string(states.size() - base.size()) +
             " orbit points, " + std::to_string(bad) + " off, max angle to V " + sci(worst_angle);
  return r;
}

CriterionResult c3_projection(const SelftestOptions& o) {
  CriterionResult r;
  std::vector<PureState> states;
  for (auto& s : ghz_samples(o.seed)) states.push_back(std::move(s.state));
  for (auto& s : grid_states(o.seed)) states.push_back(std::move(s));
  Rng rng = make_rng(o.seed, kStreamHaar);
  for (int k = 0; k < 50; ++k) states.push_back(haar_random_state(1 + k % 4, rng));

  int bad = 0;
  double worst = 0.0;
  for (const auto& s : states) {
    const ProjectionCheck pc = phase_projection_check(s, o.tol_null);
    worst = std::max(worst, pc.max_angle);
    if (!pc.pass) ++bad;
  }
  r.pass = bad == 0;
  r.detail = std::to_string(states.size()) + " states, " + std::to_string(bad) + " with P K_psi != K_rho, max angle " +
             sci(worst);
  return r;
}

CriterionResult c4_zeta(const SelftestOptions& o) {
  CriterionResult r;
  Rng rng = make_rng(o.seed, kStreamZeta);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const DensityMatrix rho = random_density(n, rng);
    std::vector<double> t(static_cast<std::size_t>(n));
    LieElement x(n);
    for (int j = 1; j <= n; ++j) {
      t[static_cast<std::size_t>(j - 1)] = standard_normal(rng);
      x.part(j) = {t[static_cast<std::size_t>(j - 1)], 0.0, 0.0};
    }
    const CMatrix lhs = commutator_action(x, rho);
    for (Eigen::Index i = 0; i < rho.dimension(); ++i) {
      for (Eigen::Index j = 0; j < rho.dimension(); ++j) {
        const cplx rhs = zeta(MultiIndex(n, static_cast<std::uint64_t>(i)), MultiIndex(n, static_cast<std::uint64_t>(j)), t) *
                         rho(i, j);
        worst = std::max(worst, std::abs(lhs(i, j) - rhs));
      }
    }
  }
  r.pass = worst < 1e-12;
  r.detail = "100 random (t, rho), max entry error " + sci(worst);
  return r;
}

CriterionResult c5_unentangled(const SelftestOptions& o) {
  CriterionResult r;
  Rng rng = make_rng(o.seed, kStreamUnentangled);
  int bad_forward = 0;
  int bad_converse = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 3;
    const int ell = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    const PureState rest = haar_random_state(n - 1, rng);
    std::vector<int> perm{ell};
    for (int q = 1; q <= n; ++q) {
      if (q != ell) perm.push_back(q);
    }
    const PureState psi = permute_qubits(tensor(PureState::basis(1, 0), rest), perm);
    const StabilizerBasis k = stabilizer_density(to_density(psi), o.tol_null);
    const Eigen::MatrixXd q = k.coordinate_matrix();
    const double dist = distance_to_span(embed(n, ell, {1.0, 0.0, 0.0}).coords(false), q);
    const bool pure_ell = 1.0 - reduced_purity(psi, QubitSubset(n, {ell})) < kPureTol;
    if (!(dist < kAlgebraTol && pure_ell && slot_intersection_dim(q, ell) == 1)) ++bad_forward;
    // other qubits are entangled and carry no single-slot stabilizer
    for (int j = 1; j <= n; ++j) {
      if (j == ell) continue;
      const bool pure_j = 1.0 - reduced_purity(psi, QubitSubset(n, {j})) < kPureTol;
      if (pure_j || slot_intersection_dim(q, j) != 0) ++bad_converse;
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const PureState psi = haar_random_state(n, rng);
    const Eigen::MatrixXd q = stabilizer_density(to_density(psi), o.tol_null).coordinate_matrix();
    for (int j = 1; j <= n; ++j) {
      const bool pure_j = 1.0 - reduced_purity(psi, QubitSubset(n, {j})) < kPureTol;
      if (pure_j || slot_intersection_dim(q, j) != 0) ++bad_converse;
    }
  }
  r.pass = bad_forward == 0 && bad_converse == 0;
  r.detail = "50 constructed states: " + std::to_string(bad_forward) + " missing A_l; converse on " +
             "remaining qubits and 10 Haar states: " + std::to_string(bad_converse) + " violations";
  return r;
}

CriterionResult c6_ghz_round_trip(const SelftestOptions& o) {
  CriterionResult r;
  Rng pick = make_rng(o.seed, kStreamRoundTrip);
  double worst = 0.0;
  double worst_residual = 0.0;
  int failures = 0;
  int total = 0;
  for (int n : {3, 4, 5, 6}) {
    const double theta = uniform(pick, 0.1, std::numbers::pi / 2 - 0.1);
    const cplx alpha = std::cos(theta);
    const cplx beta = std::polar(std::sin(theta), uniform(pick, 0.0, 2.0 * std::numbers::pi));
    const double hi = std::max(std::cos(theta), std::sin(theta));
    const double lo = std::min(std::cos(theta), std::sin(theta));
    const PureState base = ghz_state(n, alpha, beta);
    for (int k = 0; k < 50; ++k) {
      ++total;
      Rng rng = make_rng(derive_seed(o.seed, kStreamRoundTrip + static_cast<std::uint64_t>(n)), static_cast<std::uint64_t>(k));
      const PureState moved = haar_random_local_unitary(n, rng).apply(base);
      try {
        const GhzCanonical g = canonicalize_ghz(moved, stabilizer_pure(moved, o.tol_null), o.tol_null);
        worst = std::max({worst, std::abs(g.alpha - hi), std::abs(g.beta - lo)});
        worst_residual = std::max(worst_residual, g.residual);
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  r.pass = failures == 0 && worst < 1e-7 && worst_residual < 1e-7;
  r.detail = std::to_string(total) + " orbit points, " + std::to_string(failures) + " failures, max |(alpha,beta) error| " +
             sci(worst) + ", max residual " + sci(worst_residual);
  return r;
}

CriterionResult c7_4q_extraction(const SelftestOptions& o) {
  CriterionResult r;
  double worst_coeff = 0.0;
  double worst_rel = 0.0;
  int points = 0;
  int failures = 0;
  const auto grid = su2_grid();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const GridPoint& g = grid[p];
    const double b1 = g.b.real();
    const double b2 = g.b.imag();
    if (std::abs(b1) < 1e-3 || std::abs(b1 * b1 + b2 * b2 + g.a * b1) < 1e-3) continue;
    ++points;
    const double s = g.scale();
    const double a = g.a / s;
    const cplx b = g.b / s;
    const cplx c = g.c() / s;
    const PureState base = canonical_4q_state(g.a, g.b, g.c());

    const double pred = im_p3_formula(a, b);
    const double obs = polynomial_invariant(base, reference_triple()).imag();
    worst_rel = std::max(worst_rel, pred == 0.0 ? std::abs(obs) : std::abs(obs - pred) / std::abs(pred));

    for (int k = 0; k < 4; ++k) {
      Rng rng = make_rng(derive_seed(o.seed, kStream4q), 4 * p + static_cast<std::uint64_t>(k));
      const PureState moved = haar_random_local_unitary(4, rng).apply(base);
      try {
        Canonicalize4qOptions copt;
        copt.equiv.tol_null = o.tol_null;
        copt.equiv.tol_equiv = o.tol_equiv;
        copt.equiv.seed = derive_seed(o.seed, kStream4q + 1);
        const FourQubitCanonical can = canonicalize_4q(moved, copt);
        worst_coeff = std::max({worst_coeff, std::abs(can.a - a), std::abs(can.b - b), std::abs(can.c - c)});
      } catch (const std::exception&) {
        ++failures;
      }
    }
  }
  r.pass = failures == 0 && worst_coeff < 1e-6 && worst_rel < 1e-8;
  r.detail = std::to_string(points) + " grid points x 4 orbit points, " + std::to_string(failures) +
             " failures, max coefficient error " + sci(worst_coeff) + ", max Im P3 relative error " + sci(worst_rel);
  return r;
}

CriterionResult c8_invariance(const SelftestOptions& o) {
  CriterionResult r;
  Rng rng = make_rng(o.seed, kStreamInvariance);
  double worst = 0.0;
  std::string worst_name = "none";
  for (int trial = 0; trial < 200; ++trial) {
    PureState psi = haar_random_state(4, rng);
    if (trial % 2 == 0) {
      const cplx b{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
      psi = canonical_4q_state(1.0, b, -1.0 - b);
    }
    const PureState moved = haar_random_local_unitary(4, rng).apply(psi);
    auto track = [&](const std::string& name, double d) {
      if (d > worst) {
        worst = d;
        worst_name = name;
      }
    };
    for (std::uint64_t mask = 8; mask < 15; ++mask) {
      const QubitSubset kept = QubitSubset::from_mask(4, mask);
      track("purity:" + kept.key(), std::abs(reduced_purity(psi, kept) - reduced_purity(moved, kept)));
    }
    const PairInvariants p0 = pair_invariants(psi);
    const PairInvariants p1 = pair_invariants(moved);
    track("I1", std::abs(p0.i1 - p1.i1));
    track("I2", std::abs(p0.i2 - p1.i2));
    track("I3", std::abs(p0.i3 - p1.i3));
    track("P3", std::abs(polynomial_invariant(psi, reference_triple()) - polynomial_invariant(moved, reference_triple())));
  }
  r.pass = worst < 1e-8;
  r.detail = "200 (psi, g) pairs, max drift " + sci(worst) + " (" + worst_name + ")";
  return r;
}

CriterionResult c9_singlets(const SelftestOptions& o) {
  CriterionResult r;
  const PureState psi = singlet_pair_product();
  const StabilizerBasis kr = stabilizer_density(to_density(psi), o.tol_null);
  const StabilizerBasis kp = stabilizer_pure(psi, o.tol_null);
  r.pass = kr.dim() == 6 && kp.dim() == 6;
  r.detail = "dim K_rho = " + std::to_string(kr.dim()) + ", dim K_psi = " + std::to_string(kp.dim());
  return r;
}

CriterionResult c10_negative(const SelftestOptions& o) {
  CriterionResult r;
  ClassifyOptions copt;
  copt.tol_null = o.tol_null;
  const ClassificationReport w = classify(w_state(3), copt);
  const bool w_ok = w.stab_dim == 1 && w.verdict == Verdict::not_max_stab;

  Rng rng = make_rng(o.seed, kStreamNegative);
  int trivial = 0;
  for (int k = 0; k < 100; ++k) {
    if (stabilizer_pure(haar_random_state(3 + k % 2, rng), o.tol_null).dim() == 0) ++trivial;
  }
  EquivOptions eopt;
  eopt.tol_null = o.tol_null;
  eopt.tol_equiv = o.tol_equiv;
  eopt.seed = derive_seed(o.seed, kStreamNegative + 1);
  const EquivVerdict v = decide_equivalence(ghz_state(3, 1.0, 1.0), w_state(3), eopt);

  r.pass = w_ok && trivial >= 95 && v.status == EquivStatus::inequivalent;
  r.detail = "W3 dim " + std::to_string(w.stab_dim) + " verdict " + to_string(w.verdict) + "; Haar dim 0 in " +
             std::to_string(trivial) + "/100; GHZ3 vs W3 " + to_string(v.status) +
             (v.separator ? " by " + v.separator->name : std::string());
  return r;
}

CriterionResult c11_uniqueness(const SelftestOptions& o) {
  CriterionResult r;
  int equivalent = 0;
  double min_best = std::numeric_limits<double>::infinity();
  int index = 0;
  for (double b2 : {0.4, 0.7, 1.0, 1.5, 2.5}) {
    const cplx b{0.0, b2};
    const PureState psi = canonical_4q_state(1.0, b, -1.0 - b);
    const PureState phi = canonical_4q_state(1.0, std::conj(b), -1.0 - std::conj(b));
    EquivOptions eopt;
    eopt.tol_null = o.tol_null;
    eopt.tol_equiv = o.tol_equiv;
    eopt.seed = derive_seed(o.seed, kStreamUniqueness + static_cast<std::uint64_t>(index));
    if (decide_equivalence(psi, phi, eopt).status == EquivStatus::equivalent) ++equivalent;
    OptimizerOptions opt;
    opt.restarts = o.uniqueness_restarts;
    opt.seed = derive_seed(o.seed, kStreamUniqueness + 50 + static_cast<std::uint64_t>(index));
    opt.stop_below = 0.0;
    min_best = std::min(min_best, lu_infidelity(psi, phi, opt).best);
    ++index;
  }
  r.pass = equivalent == 0 && min_best > 1e-3;
  r.detail = "5 conjugate pairs with b1 = 0: " + std::to_string(equivalent) + " judged equivalent, min best infidelity " +
             sci(min_best) + " over " + std::to_string(o.uniqueness_restarts) + " restarts";
  return r;
}

} // namespace

std::string criterion_name(int id) {
  switch (id) {
  case 1: return "GHZ stabilizer dimension n-1";
  case 2: return "4-qubit su(2) family K_rho = V";
  case 3: return "K_rho = P K_psi with equal dimensions";
  case 4: return "zeta commutator equation";
  case 5: return "unentangled-qubit criterion";
  case 6: return "GHZ canonical round trip";
  case 7: return "4-qubit canonical extraction";
  case 8: return "invariant LU drift";
  case 9: return "singlet product dim K_rho = 6";
  case 10: return "negative controls";
  case 11: return "conjugate-pair uniqueness guard";
  case kCriterionCount + 1: return "total selftest wall time";
  default: throw std::invalid_argument("no criterion " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id, const SelftestOptions& options) {
  using Fn = CriterionResult (*)(const SelftestOptions&);
  static constexpr Fn table[] = {c1_ghz_dimension, c2_su2_family, c3_projection, c4_zeta,
                                 c5_unentangled,   c6_ghz_round_trip, c7_4q_extraction, c8_invariance,
                                 c9_singlets,      c10_negative,   c11_uniqueness};
  if (id < 1 || id > kCriterionCount) throw std::invalid_argument("no criterion " + std::to_string(id));
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](options);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.id = id;
  r.name = criterion_name(id);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  // criteria 1 and 2 carry their own one-minute budget
  if ((id == 1 || id == 2) && r.seconds >= 60.0) {
    r.pass = false;
    r.detail += "; exceeded 60 s";
  }
  return r;
}

bool SelftestReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  const auto start = Clock::now();
  SelftestReport rep;
  rep.seed = options.seed;
  rep.criteria.resize(kCriterionCount);
  parallel_for(rep.criteria.size(), options.workers == 0 ? default_workers() : options.workers,
               [&](std::size_t i) { rep.criteria[i] = run_criterion(static_cast<int>(i) + 1, options); });
  rep.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  CriterionResult total;
  total.id = kCriterionCount + 1;
  total.name = criterion_name(total.id);
  total.pass = rep.total_seconds < options.time_budget;
  total.detail = "budget " + sci(options.time_budget) + " s";
  total.seconds = rep.total_seconds;
  rep.criteria.push_back(total);
  return rep;
}

} // namespace stabscope
