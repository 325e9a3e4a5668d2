#pragma once

#include <functional>
#include <string>

#include "mollify/diffusion.hpp"
#include "mollify/grid.hpp"

namespace mollify {

/// One backward problem: fractional order, conductivity, initial state.
/// Final time is the conductivity's T (1 for the built-in examples).
struct ProblemSpec {
  int id = 0;  // 1..4 for the catalogue, 0 for custom problems
  double tau = 1.0;
  Conductivity conductivity = Conductivity::constant(0.1);
  std::function<RealField(const Grid2D&)> initial_data;
  std::string sobolev_note;
};

/// Catalogue:
///   1: tau = 1,   gamma = 0.1(3 - 2t), u0 = exp(-|x|^2)
///   2: tau = 1,   gamma = 0.1(2 - t),  u0 = v(x1) v(x2), v the width-3 triangle
///   3: tau = 1,   gamma = 0.1,         u0 = indicator of [-5, 5]^2
///   4: tau = 1/2, gamma = 0.1,         u0 = Shepp-Logan head phantom
/// DomainError for any other id.
ProblemSpec example_problem(int id);

/// Custom problem from a sampled initial state; make_initial requires the
/// requested grid to match the field's grid.
ProblemSpec custom_problem(RealField u0, double tau, Conductivity conductivity);

/// Triangle impulse 1 - |lambda|/3 on [-3, 3], zero elsewhere.
double triangle_impulse(double lambda);

/// Modified Shepp-Logan phantom at (x1, x2) with the unit disc of the
/// standard ellipse table rescaled to [-L, L]^2; intensities clipped to [0, 1].
double shepp_logan(double x1, double x2, double half_width);

RealField make_initial(const ProblemSpec& problem, const Grid2D& grid);
DiffusionSymbol diffusion_symbol(const ProblemSpec& problem);
/// A u0 with the problem's diffusion symbol.
RealField make_exact_data(const ProblemSpec& problem, const Grid2D& grid);

}  // namespace mollify
