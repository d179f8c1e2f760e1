#include "stabscope/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace stabscope {

namespace {

struct Evaluation {
  double value = 1.0;
  cplx overlap{0.0, 0.0};
  Eigen::VectorXd gradient;
};

// f(exp(s) g) at s = 0 and its gradient with respect to s, where s holds
// (x, y, z) per qubit in the A, B, C basis.
Evaluation evaluate(const LocalUnitary& g, const CVector& psi, const CVector& phi, int n) {
  static const std::array<Mat2, 3> basis{su2_a(), su2_b(), su2_c()};
  Evaluation e;
  const CVector chi = g.apply(psi);
  e.overlap = phi.dot(chi); // <phi|chi>
  e.value = std::max(0.0, 1.0 - std::norm(e.overlap));
  e.gradient.resize(3 * n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 0; k < 3; ++k) {
      const cplx w = phi.dot(apply_single_qubit(basis[static_cast<std::size_t>(k)], j, n, chi));
      e.gradient(3 * (j - 1) + k) = -2.0 * (std::conj(e.overlap) * w).real();
    }
  }
  return e;
}

LocalUnitary step(const LocalUnitary& g, const Eigen::VectorXd& s) {
  std::vector<Su2Element> gen;
  gen.reserve(static_cast<std::size_t>(g.qubits()));
  for (int j = 0; j < g.qubits(); ++j) gen.push_back({s(3 * j), s(3 * j + 1), s(3 * j + 2)});
  return LocalUnitary::exp_of(gen) * g;
}

struct RestartResult {
  double value = 1.0;
  LocalUnitary g = LocalUnitary::identity(1);
  cplx overlap{0.0, 0.0};
};

// L-BFGS with Armijo backtracking. Curvature pairs are kept in the
// right-trivialized chart, which is exact to first order after recentring.
RestartResult minimize(LocalUnitary g, const CVector& psi, const CVector& phi, int n, const OptimizerOptions& opt) {
  Evaluation cur = evaluate(g, psi, phi, n);
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;

  for (int it = 0; it < opt.max_iterations; ++it) {
    if (cur.value < opt.stop_below || cur.gradient.norm() < 1e-14) break;

    // two-loop recursion
    Eigen::VectorXd q = cur.gradient;
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
      const auto& [s, y] = history[k];
      alpha[k] = s.dot(q) / y.dot(s);
      q -= alpha[k] * y;
    }
    if (!history.empty()) {
      const auto& [s, y] = history.back();
      q *= s.dot(y) / y.dot(y);
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      const auto& [s, y] = history[k];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[k] - beta) * s;
    }
    Eigen::VectorXd dir = -q;
    double slope = dir.dot(cur.gradient);
    if (!(slope < 0.0)) {
      history.clear();
      dir = -cur.gradient;
      slope = dir.dot(cur.gradient);
    }
    // Keep trial rotations below a quarter turn per coordinate block.
    double t = history.empty() ? std::min(1.0, 0.5 / std::max(dir.norm(), 1e-300)) : 1.0;
    Evaluation trial;
    LocalUnitary g_trial = g;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      g_trial = step(g, t * dir);
      trial = evaluate(g_trial, psi, phi, n);
      if (trial.value <= cur.value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    const Eigen::VectorXd s = t * dir;
    const Eigen::VectorXd y = trial.gradient - cur.gradient;
    if (y.dot(s) > 1e-18 * s.squaredNorm()) {
      history.emplace_back(s, y);
      if (static_cast<int>(history.size()) > opt.memory) history.pop_front();
    }
    const double decrease = cur.value - trial.value;
    g = g_trial;
    cur = std::move(trial);
    if (decrease < 1e-17 && cur.gradient.norm() < 1e-10) break;
  }
  return {cur.value, g, cur.overlap};
}

} // namespace

double infidelity(const LocalUnitary& g, const PureState& psi, const PureState& phi) {
  return std::max(0.0, 1.0 - std::norm(phi.amplitudes().dot(g.apply(psi.amplitudes()))));
}

Eigen::VectorXd infidelity_gradient(const LocalUnitary& g, const PureState& psi, const PureState& phi) {
  return evaluate(g, psi.amplitudes(), phi.amplitudes(), psi.qubits()).gradient;
}

InfidelityResult lu_infidelity(const PureState& psi, const PureState& phi, const OptimizerOptions& options) {
  if (psi.qubits() != phi.qubits()) {
    throw std::invalid_argument("lu_infidelity: states have different qubit counts (" + std::to_string(psi.qubits()) +
                                " vs " + std::to_string(phi.qubits()) + ")");
  }
  if (options.restarts < 1) throw std::invalid_argument("lu_infidelity: restarts must be >= 1");
  const int n = psi.qubits();
  InfidelityResult out;
  out.argmin = LocalUnitary::identity(n);
  cplx best_overlap{1.0, 0.0};
  for (int r = 0; r < options.restarts; ++r) {
    LocalUnitary start = LocalUnitary::identity(n);
    if (r > 0) {
      Rng rng = make_rng(options.seed, static_cast<std::uint64_t>(r));
      start = haar_random_local_unitary(n, rng);
    }
    const RestartResult res = minimize(start, psi.amplitudes(), phi.amplitudes(), n, options);
    out.per_restart.push_back(res.value);
    out.restarts_used = r + 1;
    // strict improvement keeps the lowest restart index on ties
    if (r == 0 || res.value < out.best) {
      out.best = res.value;
      out.argmin = res.g;
      best_overlap = res.overlap;
    }
    if (out.best < options.stop_below) break;
  }
  const double mag = std::abs(best_overlap);
  if (mag > 0.0) out.argmin = out.argmin.with_phase(std::conj(best_overlap) / mag);
  return out;
}

std::string to_string(EquivStatus s) {
  switch (s) {
  case EquivStatus::equivalent: return "equivalent";
  case EquivStatus::inequivalent: return "inequivalent";
  case EquivStatus::unknown: return "unknown";
  }
  return "unknown";
}

EquivStatus equiv_status_from_string(const std::string& s) {
  if (s == "equivalent") return EquivStatus::equivalent;
  if (s == "inequivalent") return EquivStatus::inequivalent;
  if (s == "unknown") return EquivStatus::unknown;
  throw std::invalid_argument("unknown equivalence status '" + s + "'");
}

namespace {

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  os << ']';
  return os.str();
}

} // namespace

std::optional<Separator> screen_inequivalence(const PureState& psi, const PureState& phi, const EquivOptions& options) {
  if (psi.qubits() != phi.qubits()) {
    return Separator{"n", std::to_string(psi.qubits()), std::to_string(phi.qubits()),
                     std::abs(static_cast<double>(psi.qubits() - phi.qubits()))};
  }
  const StabilizerBasis kp = stabilizer_pure(psi, options.tol_null);
  const StabilizerBasis kq = stabilizer_pure(phi, options.tol_null);
  if (kp.dim() != kq.dim()) {
    return Separator{"stab_dim", std::to_string(kp.dim()), std::to_string(kq.dim()),
                     std::abs(static_cast<double>(kp.dim() - kq.dim()))};
  }
  if (kp.proj_dims != kq.proj_dims) {
    double diff = 0.0;
    for (std::size_t j = 0; j < kp.proj_dims.size(); ++j) {
      diff = std::max(diff, std::abs(static_cast<double>(kp.proj_dims[j] - kq.proj_dims[j])));
    }
    return Separator{"proj_dims", join(kp.proj_dims), join(kq.proj_dims), diff};
  }
  const FingerprintDifference d = max_difference(fingerprint(psi), fingerprint(phi));
  if (d.difference > options.screen_tol) return Separator{d.component, d.lhs_text, d.rhs_text, d.difference};
  return std::nullopt;
}

EquivVerdict decide_equivalence(const PureState& psi, const PureState& phi, const EquivOptions& options) {
  EquivVerdict v;
  if (auto sep = screen_inequivalence(psi, phi, options)) {
    v.status = EquivStatus::inequivalent;
    v.separator = std::move(sep);
    return v;
  }
  OptimizerOptions opt;
  opt.restarts = options.restarts;
  opt.seed = options.seed;
  opt.stop_below = std::min(1e-14, options.tol_equiv);
  const InfidelityResult r = lu_infidelity(psi, phi, opt);
  v.best_infidelity = r.best;
  v.restarts_used = r.restarts_used;
  if (r.best < options.tol_equiv) {
    v.status = EquivStatus::equivalent;
    v.witness = r.argmin;
  } else {
    v.status = EquivStatus::unknown;
  }
  return v;
}

} // namespace stabscope
