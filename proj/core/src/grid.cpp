#include "mollify/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mollify/errors.hpp"

namespace mollify {

Grid2D::Grid2D(int n, double half_width) : n_(n), half_width_(half_width) {
  if (n <= 0 || n % 2 != 0) {
    throw DomainError("Grid2D: N must be a positive even integer, got " + std::to_string(n));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("Grid2D: L must be positive and finite");
  }
}

double Grid2D::xi_norm_squared(int k, int l) const noexcept {
  const long a = 2L * k + 1 - n_;
  const long b = 2L * l + 1 - n_;
  const double h = 0.5 * xi_spacing();
  return static_cast<double>(a * a + b * b) * h * h;
}

RealField::RealField(Grid2D g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw DimensionError("RealField: expected " + std::to_string(grid.size()) +
                         " samples, got " + std::to_string(values.size()));
  }
}

SpectralField::SpectralField(Grid2D g, std::vector<std::complex<double>> v)
    : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw DimensionError("SpectralField: expected " + std::to_string(grid.size()) +
                         " samples, got " + std::to_string(values.size()));
  }
}

RadialShells::RadialShells(const Grid2D& grid) {
  const int n = grid.n();
  // Integer keys (2k+1-N)^2 + (2l+1-N)^2 identify |xi| exactly.
  std::vector<long> keys(grid.size());
  for (int k = 0; k < n; ++k) {
    const long a = 2L * k + 1 - n;
    for (int l = 0; l < n; ++l) {
      const long b = 2L * l + 1 - n;
      keys[grid.index(k, l)] = a * a + b * b;
    }
  }
  std::vector<long> unique = keys;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  const double h = 0.5 * grid.xi_spacing();
  radius_.reserve(unique.size());
  for (long key : unique) radius_.push_back(h * std::sqrt(static_cast<double>(key)));

  shell_of_node_.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto it = std::lower_bound(unique.begin(), unique.end(), keys[i]);
    shell_of_node_[i] = static_cast<std::uint32_t>(it - unique.begin());
  }
}

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": grid mismatch (N=" + std::to_string(a.n()) +
                         ", L=" + std::to_string(a.half_width()) + " vs N=" +
                         std::to_string(b.n()) + ", L=" + std::to_string(b.half_width()) + ")");
  }
}

void require_finite(const RealField& f, const char* what) {
  for (double v : f.values) {
    if (!std::isfinite(v)) throw InvalidFieldError(std::string(what) + ": non-finite sample");
  }
}

void require_finite(const SpectralField& f, const char* what) {
  for (const auto& v : f.values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidFieldError(std::string(what) + ": non-finite coefficient");
    }
  }
}

}  // namespace mollify
