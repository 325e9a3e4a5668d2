#include "mollify/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"

namespace mollify {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finaliser applied to a golden-ratio offset of the pair.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

double expected_chi_norm(std::size_t m) {
  if (m == 0) throw DomainError("expected_chi_norm: M must be at least 1");
  const double half = 0.5 * static_cast<double>(m);
  return std::numbers::sqrt2 * std::exp(std::lgamma(half + 0.5) - std::lgamma(half));
}

NoisyData add_noise(const RealField& g, const NoiseSpec& spec) {
  if (!(spec.perc_noise >= 0.0) || !std::isfinite(spec.perc_noise)) {
    throw DomainError("add_noise: perc_noise must be a nonnegative number");
  }
  require_finite(g, "add_noise");
  const double delta = spec.perc_noise * l2_norm(g) / 100.0;
  if (delta == 0.0) return {g, 0.0};

  // E||eps|| under the weighted norm is kappa * E||eps||_2.
  const double expected = g.grid.spacing() * expected_chi_norm(g.grid.size());
  const double eta = delta / expected;

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  RealField out = g;
  for (double& v : out.values) v += eta * normal(rng);
  return {std::move(out), delta};
}

}  // namespace mollify
