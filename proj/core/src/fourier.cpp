#include "mollify/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mollify/errors.hpp"

namespace mollify {
namespace {

using cplx = std::complex<double>;

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using Buffer = std::unique_ptr<fftw_complex[], FftwFree>;

Buffer allocate(std::size_t count) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (p == nullptr) throw std::bad_alloc();
  return Buffer(p);
}

// Plans are created once per (N, sign) under a lock. fftw_execute_dft on a
// shared plan is thread-safe as long as the arrays are fftw_malloc'd.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto& slot = plans[{n, sign}];
  if (slot == nullptr) {
    const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    Buffer in = allocate(count);
    Buffer out = allocate(count);
    slot = fftw_plan_dft_2d(n, n, in.get(), out.get(), sign, FFTW_ESTIMATE);
    if (slot == nullptr) throw Error("fftw_plan_dft_2d failed");
  }
  return slot;
}

// With x_j = x_0 + j kappa and xi_k = xi_0 + k dxi, kappa dxi = 1/N:
//   exp(-2 pi i x_j xi_k) = exp(-2 pi i x_0 xi_0) exp(-2 pi i x_0 k dxi)
//                         * exp(-2 pi i j kappa xi_0) exp(-2 pi i jk/N).
// For the half-sample grid the phases reduce to rational multiples of pi:
//   -2 pi j kappa xi_0                 =  pi j (N-1) / N
//   -2 pi (x_0 xi_0 + x_0 k dxi)       = -pi (N-1)(N-1-2k) / (2N)
// The integer numerators are reduced before converting to an angle.
std::vector<cplx> pre_phase(int n) {
  std::vector<cplx> out(n);
  const long period = 2L * n;
  for (int j = 0; j < n; ++j) {
    const long num = (static_cast<long>(j) * (n - 1)) % period;
    out[j] = std::polar(1.0, std::numbers::pi * static_cast<double>(num) / n);
  }
  return out;
}

std::vector<cplx> post_phase(int n) {
  std::vector<cplx> out(n);
  const long period = 4L * n;
  for (int k = 0; k < n; ++k) {
    long num = (static_cast<long>(n - 1) * (n - 1 - 2L * k)) % period;
    if (num < 0) num += period;
    out[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(num) / (2.0 * n));
  }
  return out;
}

}  // namespace

SpectralField forward_ft(const RealField& f) {
  require_finite(f, "forward_ft");
  const Grid2D& grid = f.grid;
  const int n = grid.n();
  const auto pre = pre_phase(n);
  const auto post = post_phase(n);
  const double kappa2 = grid.spacing() * grid.spacing();

  Buffer in = allocate(grid.size());
  Buffer out = allocate(grid.size());
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const cplx v = f(j, m) * pre[j] * pre[m];
      const auto idx = grid.index(j, m);
      in[idx][0] = v.real();
      in[idx][1] = v.imag();
    }
  }
  fftw_execute_dft(plan_for(n, FFTW_FORWARD), in.get(), out.get());

  SpectralField F(grid);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto idx = grid.index(k, l);
      F.values[idx] = kappa2 * post[k] * post[l] * cplx(out[idx][0], out[idx][1]);
    }
  }
  return F;
}

RealField inverse_ft(const SpectralField& F) {
  require_finite(F, "inverse_ft");
  const Grid2D& grid = F.grid;
  const int n = grid.n();
  const auto pre = pre_phase(n);
  const auto post = post_phase(n);
  const double dxi2 = grid.xi_spacing() * grid.xi_spacing();

  Buffer in = allocate(grid.size());
  Buffer out = allocate(grid.size());
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const auto idx = grid.index(k, l);
      const cplx v = F.values[idx] * std::conj(post[k] * post[l]);
      in[idx][0] = v.real();
      in[idx][1] = v.imag();
    }
  }
  fftw_execute_dft(plan_for(n, FFTW_BACKWARD), in.get(), out.get());

  RealField f(grid);
  double max_re = 0.0;
  double max_im = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < n; ++m) {
      const auto idx = grid.index(j, m);
      const cplx v = dxi2 * std::conj(pre[j] * pre[m]) * cplx(out[idx][0], out[idx][1]);
      f.values[idx] = v.real();
      max_re = std::max(max_re, std::abs(v.real()));
      max_im = std::max(max_im, std::abs(v.imag()));
    }
  }
  if (max_im > 1e-8 * max_re && max_im > std::numeric_limits<double>::min()) {
    throw InvalidFieldError("inverse_ft: spectrum is not Hermitian (imaginary residue " +
                            std::to_string(max_im) + " vs max real " + std::to_string(max_re) +
                            ")");
  }
  return f;
}

double l2_norm(const RealField& f) {
  require_finite(f, "l2_norm");
  double sum = 0.0;
  for (double v : f.values) sum += v * v;
  return f.grid.spacing() * std::sqrt(sum);
}

double l2_norm(const SpectralField& F) {
  require_finite(F, "l2_norm");
  double sum = 0.0;
  for (const auto& v : F.values) sum += std::norm(v);
  return F.grid.xi_spacing() * std::sqrt(sum);
}

double l2_distance(const RealField& a, const RealField& b) {
  require_same_grid(a.grid, b.grid, "l2_distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return a.grid.spacing() * std::sqrt(sum);
}

double l2_distance(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid, b.grid, "l2_distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += std::norm(a.values[i] - b.values[i]);
  return a.grid.xi_spacing() * std::sqrt(sum);
}

}  // namespace mollify
