#include "stabscope/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stabscope {

namespace {

std::vector<int> validated(std::vector<int> images_one_based, int m, const char* name) {
  if (static_cast<int>(images_one_based.size()) != m) {
    throw std::invalid_argument(std::string(name) + " must have " + std::to_string(m) + " entries");
  }
  std::vector<int> zero(images_one_based.size());
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (std::size_t k = 0; k < images_one_based.size(); ++k) {
    const int v = images_one_based[k] - 1;
    if (v < 0 || v >= m || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument(std::string(name) + " is not a permutation of 1.." + std::to_string(m));
    }
    seen[static_cast<std::size_t>(v)] = true;
    zero[k] = v;
  }
  return zero;
}

std::string images(const std::vector<int>& zero_based) {
  std::string s;
  for (std::size_t k = 0; k < zero_based.size(); ++k) {
    if (zero_based.size() > 9 && k > 0) s.push_back(',');
    s += std::to_string(zero_based[k] + 1);
  }
  return s;
}

std::vector<int> parse_images(const std::string& text) {
  std::vector<int> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } else {
    for (char ch : text) {
      if (ch < '1' || ch > '9') throw std::invalid_argument("bad permutation image '" + text + "'");
      out.push_back(ch - '0');
    }
  }
  return out;
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_four_qubits(const PureState& psi, const char* what) {
  if (psi.qubits() != 4) {
    throw std::invalid_argument(std::string(what) + " is defined for 4 qubits, got " + std::to_string(psi.qubits()));
  }
}

} // namespace

// ---------------------------------------------------------------------------
// PermutationTriple

PermutationTriple PermutationTriple::from_images(std::vector<int> sigma, std::vector<int> tau, std::vector<int> phi) {
  const auto m = static_cast<int>(sigma.size());
  if (m < 1) throw std::invalid_argument("permutation triple needs m >= 1");
  PermutationTriple p;
  p.m = m;
  p.sigma = validated(std::move(sigma), m, "sigma");
  p.tau = validated(std::move(tau), m, "tau");
  p.phi = validated(std::move(phi), m, "phi");
  return p;
}

PermutationTriple PermutationTriple::identity(int m) {
  std::vector<int> id(static_cast<std::size_t>(m));
  std::iota(id.begin(), id.end(), 1);
  return from_images(id, id, id);
}

PermutationTriple PermutationTriple::parse(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw std::invalid_argument("permutation key must be m:sigma:tau:phi, got '" + key + "'");
  const int m = std::stoi(parts[0]);
  PermutationTriple p = from_images(parse_images(parts[1]), parse_images(parts[2]), parse_images(parts[3]));
  if (p.m != m) throw std::invalid_argument("permutation key copy count disagrees with images: '" + key + "'");
  return p;
}

std::string PermutationTriple::key() const {
  return std::to_string(m) + ":" + images(sigma) + ":" + images(tau) + ":" + images(phi);
}

PermutationTriple reference_triple() { return PermutationTriple::from_images({3, 2, 1}, {2, 1, 3}, {2, 3, 1}); }

PermutationTriple swapped_reference_triple() {
  return PermutationTriple::from_images({3, 2, 1}, {2, 3, 1}, {2, 1, 3});
}

std::vector<PermutationTriple> permutation_family(int m) {
  if (m < 1 || m > kMaxPolyCopies) throw std::invalid_argument("permutation_family: m out of range");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 1);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::vector<PermutationTriple> out;
  for (const auto& s : perms) {
    for (const auto& t : perms) {
      for (const auto& f : perms) out.push_back(PermutationTriple::from_images(s, t, f));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Purity invariants

double purity_invariant(const PureState& psi, const QubitSubset& traced) {
  if (traced.qubits() != psi.qubits()) throw std::invalid_argument("purity_invariant: subset size mismatch");
  if (traced.size() == 0 || static_cast<int>(traced.size()) == psi.qubits()) {
    throw std::invalid_argument("purity_invariant: traced subset must be proper and nonempty");
  }
  return reduced_purity(psi, traced.complement());
}

CanonicalNorms canonical_norms(const PureState& psi) {
  require_four_qubits(psi, "canonical_norms");
  auto offset = [&psi](std::vector<int> pair) {
    const double p = reduced_purity(psi, QubitSubset(4, std::move(pair)));
    return std::sqrt(std::max(0.0, (p - 0.25) / 12.0));
  };
  const std::array<double, 3> d{offset({1, 2}), offset({1, 3}), offset({1, 4})};

  // Pick the sign pattern whose norms sum to 1/2; a branch flip is only
  // invisible when its offset is zero, in which case both roots coincide.
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 3> chosen{};
  for (int signs = 0; signs < 8; ++signs) {
    std::array<double, 3> x{};
    for (int k = 0; k < 3; ++k) x[static_cast<std::size_t>(k)] = 0.25 + (((signs >> k) & 1) ? -1.0 : 1.0) * d[static_cast<std::size_t>(k)];
    const double residual = std::abs(x[0] + x[1] + x[2] - 0.5);
    if (residual < best - 1e-15) {
      best = residual;
      chosen = x;
    }
  }
  CanonicalNorms out;
  out.a2 = std::max(0.0, chosen[0]);
  out.c2 = std::max(0.0, chosen[1]);
  out.b2 = std::max(0.0, chosen[2]);
  out.branch_residual = best;
  return out;
}

PairInvariants pair_invariants(const PureState& psi) {
  const CanonicalNorms nrm = canonical_norms(psi);
  return {std::sqrt(nrm.a2 * nrm.b2), std::sqrt(nrm.a2 * nrm.c2), std::sqrt(nrm.b2 * nrm.c2)};
}

// ---------------------------------------------------------------------------
// Polynomial invariants

cplx polynomial_invariant(const PureState& psi, const PermutationTriple& p) {
  require_four_qubits(psi, "polynomial_invariant");
  const int m = p.m;
  if (m < 1 || m > kMaxPolyCopies) {
    throw std::invalid_argument("polynomial_invariant: m must be in 1.." + std::to_string(kMaxPolyCopies));
  }
  const CVector& c = psi.amplitudes();
  constexpr unsigned q1 = 8U, q2 = 4U, q3 = 2U, q4 = 1U;
  const auto mu = static_cast<std::size_t>(m);

  std::vector<unsigned> idx(mu, 0U);
  std::size_t total = 1;
  for (int k = 0; k < m; ++k) total *= 16;

  cplx sum{0.0, 0.0};
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rest = t;
    for (std::size_t k = mu; k-- > 0;) {
      idx[k] = static_cast<unsigned>(rest % 16);
      rest /= 16;
    }
    cplx term{1.0, 0.0};
    for (std::size_t k = 0; k < mu; ++k) term *= c(idx[k]);
    if (term == cplx{0.0, 0.0}) continue;
    for (std::size_t k = 0; k < mu; ++k) {
      const unsigned j = (idx[k] & q1) | (idx[static_cast<std::size_t>(p.sigma[k])] & q2) |
                         (idx[static_cast<std::size_t>(p.tau[k])] & q3) |
                         (idx[static_cast<std::size_t>(p.phi[k])] & q4);
      term *= std::conj(c(j));
    }
    sum += term;
  }
  return sum;
}

double im_p3_formula(double a, cplx b) {
  const double b1 = b.real();
  const double b2 = b.imag();
  return -24.0 * a * a * b1 * b2 * (b1 * b1 + b2 * b2 + a * b1);
}

// ---------------------------------------------------------------------------
// Fingerprints

const std::vector<PermutationTriple>& fingerprint_triples() {
  static const std::vector<PermutationTriple> triples = [] {
    std::vector<PermutationTriple> out{PermutationTriple::identity(1)};
    for (int m = 2; m <= 3; ++m) {
      auto fam = permutation_family(m);
      out.insert(out.end(), fam.begin(), fam.end());
    }
    return out;
  }();
  return triples;
}

InvariantFingerprint fingerprint(const PureState& psi) {
  InvariantFingerprint f;
  const int n = psi.qubits();
  f.n = n;
  if (n >= 2) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    const std::uint64_t first = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = first; mask < all; ++mask) {
      if (!(mask & first)) continue;
      const QubitSubset kept = QubitSubset::from_mask(n, mask);
      f.purities[kept.key()] = reduced_purity(psi, kept);
    }
  }
  if (n == 4) {
    f.pair = pair_invariants(psi);
    for (const auto& p : fingerprint_triples()) f.poly[p.key()] = polynomial_invariant(psi, p);
  }
  return f;
}

FingerprintDifference max_difference(const InvariantFingerprint& a, const InvariantFingerprint& b) {
  FingerprintDifference worst;
  worst.difference = -1.0;
  auto consider_real = [&worst](const std::string& name, double x, double y) {
    const double d = std::abs(x - y);
    if (d > worst.difference) worst = {name, x, y, d, format_real(x), format_real(y)};
  };
  if (a.n != b.n) {
    worst = {"n", static_cast<double>(a.n), static_cast<double>(b.n),
             std::abs(static_cast<double>(a.n - b.n)), std::to_string(a.n), std::to_string(b.n)};
    return worst;
  }
  for (const auto& [key, x] : a.purities) {
    const auto it = b.purities.find(key);
    if (it != b.purities.end()) consider_real("purity:" + key, x, it->second);
  }
  if (a.pair && b.pair) {
    consider_real("I1", a.pair->i1, b.pair->i1);
    consider_real("I2", a.pair->i2, b.pair->i2);
    consider_real("I3", a.pair->i3, b.pair->i3);
  }
  for (const auto& [key, x] : a.poly) {
    const auto it = b.poly.find(key);
    if (it == b.poly.end()) continue;
    const double d = std::abs(x - it->second);
    if (d > worst.difference) {
      worst = {"poly:" + key, x.imag(), it->second.imag(), d, format_complex(x), format_complex(it->second)};
    }
  }
  if (worst.difference < 0.0) worst = {"none", 0.0, 0.0, 0.0, "", ""};
  return worst;
}

} // namespace stabscope
