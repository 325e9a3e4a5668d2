#pragma once

#include "mollify/grid.hpp"

namespace mollify {

/// Quadrature approximation of the continuous transform
///   F f(xi) = \int f(x) exp(-2 pi i x.xi) dx
/// at the frequency nodes: kappa^2 * sum_j f(x_j) exp(-2 pi i x_j.xi_k),
/// evaluated in O(N^2 log N) with an FFT between half-sample phase ramps.
/// Throws InvalidFieldError on non-finite input.
SpectralField forward_ft(const RealField& f);

/// Exact left inverse of forward_ft on the grid. The imaginary residue of
/// the reconstruction must be at most 1e-8 * max|Re| (a Hermitian spectrum);
/// otherwise InvalidFieldError is thrown.
RealField inverse_ft(const SpectralField& F);

/// Weighted discrete L2 norms: kappa * ||f||_2 in space, xi_spacing * ||F||_2
/// in frequency. With these weights forward_ft is an isometry.
double l2_norm(const RealField& f);
double l2_norm(const SpectralField& F);

/// Weighted norm of a - b without forming the difference field.
double l2_distance(const RealField& a, const RealField& b);
double l2_distance(const SpectralField& a, const SpectralField& b);

}  // namespace mollify
