// Seeded, splittable randomness. Every random quantity in the library is
// drawn from an explicit generator so parallel workers can use
// independent streams derived from one seed.

#pragma once

#include <cstdint>
#include <random>

namespace stabscope {

using Rng = std::mt19937_64;

/// One SplitMix64 step; used to derive well-separated child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of child stream `stream` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(derive_seed(seed, stream));
}

double standard_normal(Rng& rng);
double uniform(Rng& rng, double lo, double hi);

} // namespace stabscope
