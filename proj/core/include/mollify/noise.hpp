#pragma once

#include <cstddef>
#include <cstdint>

#include "mollify/grid.hpp"

namespace mollify {

struct NoiseSpec {
  double perc_noise = 0.0;
  std::uint64_t seed = 0;
};

struct NoisyData {
  RealField g_delta;
  double delta;
};

/// g + eta * eps with eps iid standard normal (seeded), delta =
/// perc_noise * ||g|| / 100 and eta = delta / E||eps||, all norms weighted.
/// DomainError for negative perc_noise.
NoisyData add_noise(const RealField& g, const NoiseSpec& spec);

/// E||eps||_2 for eps ~ N(0, I_M): sqrt(2) Gamma((M+1)/2) / Gamma(M/2).
/// DomainError for M = 0.
double expected_chi_norm(std::size_t m);

/// Independent stream seed for (seed, index), via splitmix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace mollify
