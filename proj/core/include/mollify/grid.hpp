#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mollify {

/// Uniform N x N grid on [-L, L]^2 together with its matched frequency grid
/// on [-Omega, Omega]^2, Omega = N / (4L).
///
/// Both grids use half-sample nodes, so no node sits on an axis:
///   x(i)  = -L     + (i + 1/2) * kappa,       i = 0..N-1
///   xi(k) = -Omega + (k + 1/2) * xi_spacing,  k = 0..N-1
/// with kappa = 2L/N and xi_spacing = 1/(2L). Note kappa * xi_spacing = 1/N.
class Grid2D {
 public:
  /// Throws DomainError unless n is a positive even integer and half_width > 0.
  Grid2D(int n, double half_width);

  int n() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return 2.0 * half_width_ / n_; }
  double omega() const noexcept { return n_ / (4.0 * half_width_); }
  double xi_spacing() const noexcept { return 1.0 / (2.0 * half_width_); }

  double x(int i) const noexcept { return -half_width_ + (i + 0.5) * spacing(); }
  double xi(int k) const noexcept { return -omega() + (k + 0.5) * xi_spacing(); }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
  }
  /// Row-major: first index runs over the first coordinate.
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(j);
  }

  /// |xi|^2 at node (k, l), computed from the exact integer key
  /// (2k+1-N)^2 + (2l+1-N)^2 so that symmetric nodes agree bitwise.
  double xi_norm_squared(int k, int l) const noexcept;

  friend bool operator==(const Grid2D& a, const Grid2D& b) noexcept {
    return a.n_ == b.n_ && a.half_width_ == b.half_width_;
  }

 private:
  int n_;
  double half_width_;
};

/// Real samples on the spatial nodes of a grid.
struct RealField {
  explicit RealField(Grid2D g) : grid(g), values(g.size(), 0.0) {}
  RealField(Grid2D g, std::vector<double> v);

  double& operator()(int i, int j) { return values[grid.index(i, j)]; }
  double operator()(int i, int j) const { return values[grid.index(i, j)]; }

  Grid2D grid;
  std::vector<double> values;
};

/// Complex samples of a Fourier transform on the frequency nodes of a grid.
struct SpectralField {
  explicit SpectralField(Grid2D g) : grid(g), values(g.size(), {0.0, 0.0}) {}
  SpectralField(Grid2D g, std::vector<std::complex<double>> v);

  std::complex<double>& operator()(int k, int l) { return values[grid.index(k, l)]; }
  std::complex<double> operator()(int k, int l) const {
    return values[grid.index(k, l)];
  }

  Grid2D grid;
  std::vector<std::complex<double>> values;
};

/// Frequency nodes grouped by |xi|. Radial multipliers only need one
/// evaluation per shell; the half-sample grid has roughly N^2/8 shells.
class RadialShells {
 public:
  explicit RadialShells(const Grid2D& grid);

  std::size_t shell_count() const noexcept { return radius_.size(); }
  /// Shell index of each frequency node, in grid index order.
  const std::vector<std::uint32_t>& shell_of_node() const noexcept { return shell_of_node_; }
  /// |xi| of each shell, strictly increasing.
  const std::vector<double>& radius() const noexcept { return radius_; }

  /// Scatter one value per shell to every node.
  template <typename T>
  std::vector<T> expand(const std::vector<T>& per_shell) const {
    std::vector<T> out(shell_of_node_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = per_shell[shell_of_node_[i]];
    return out;
  }

 private:
  std::vector<std::uint32_t> shell_of_node_;
  std::vector<double> radius_;
};

void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what);
void require_finite(const RealField& f, const char* what);
void require_finite(const SpectralField& f, const char* what);

}  // namespace mollify
