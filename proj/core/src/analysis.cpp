#include "stabscope/analysis.hpp"

#include "stabscope/lie.hpp"
#include "stabscope/parallel.hpp"

#include <stdexcept>

namespace stabscope {

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  return a.n == b.n && a.product_structure.blocks == b.product_structure.blocks && a.stab_dim == b.stab_dim &&
         a.proj_dims == b.proj_dims && a.algebra_type == b.algebra_type && a.gap == b.gap &&
         a.ill_conditioned == b.ill_conditioned && a.singular_values == b.singular_values &&
         a.stab_dim_density == b.stab_dim_density && a.proj_dims_density == b.proj_dims_density &&
         a.projection_angle == b.projection_angle;
}

AnalysisReport analyze(const PureState& psi, double tol_null) {
  AnalysisReport r;
  r.n = psi.qubits();
  r.product_structure = is_product(psi);
  const StabilizerBasis k = stabilizer_pure(psi, tol_null);
  r.stab_dim = k.dim();
  r.proj_dims = k.proj_dims;
  r.algebra_type = algebra_type(k).kind;
  r.gap = k.gap;
  r.ill_conditioned = k.ill_conditioned;
  r.singular_values.assign(k.singular_values.data(), k.singular_values.data() + k.singular_values.size());
  if (r.n <= kMaxDensityQubits) {
    const ProjectionCheck pc = phase_projection_check(psi, tol_null);
    r.stab_dim_density = pc.dim_density;
    r.proj_dims_density = pc.proj_density;
    r.projection_angle = pc.max_angle;
  }
  return r;
}

OrbitReport orbit(const PureState& psi, int samples, std::uint64_t seed, double tol_null, unsigned workers) {
  if (samples < 1) throw std::invalid_argument("orbit: samples must be >= 1");
  const int n = psi.qubits();
  OrbitReport out;
  out.n = n;
  const StabilizerBasis k0 = stabilizer_pure(psi, tol_null);
  out.stab_dim = k0.dim();
  out.proj_dims = k0.proj_dims;
  const InvariantFingerprint f0 = fingerprint(psi);

  out.rows.resize(static_cast<std::size_t>(samples));
  parallel_for(out.rows.size(), workers == 0 ? default_workers() : workers, [&](std::size_t i) {
    Rng rng = make_rng(seed, i + 1);
    const PureState moved = haar_random_local_unitary(n, rng).apply(psi);
    const StabilizerBasis k = stabilizer_pure(moved, tol_null);
    const FingerprintDifference d = max_difference(f0, fingerprint(moved));
    out.rows[i] = {static_cast<int>(i), k.dim(), k.proj_dims, k.ill_conditioned, d.difference, d.component};
  });
  for (const OrbitRow& row : out.rows) {
    out.max_drift = std::max(out.max_drift, row.drift);
    if (row.stab_dim != out.stab_dim || row.proj_dims != out.proj_dims) out.consistent = false;
  }
  return out;
}

} // namespace stabscope
