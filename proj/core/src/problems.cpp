#include "mollify/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "mollify/errors.hpp"

namespace mollify {
namespace {

struct Ellipse {
  double intensity;
  double a;
  double b;
  double x0;
  double y0;
  double phi_deg;
};

// Modified Shepp-Logan table (Toft), coordinates in the unit square [-1, 1]^2.
constexpr std::array<Ellipse, 10> kSheppLogan{{
    {1.0, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
    {-0.8, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
    {0.1, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
    {0.1, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
    {0.1, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
    {0.1, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
}};

template <typename Fn>
std::function<RealField(const Grid2D&)> pointwise(Fn fn) {
  return [fn](const Grid2D& grid) {
    RealField f(grid);
    for (int i = 0; i < grid.n(); ++i) {
      for (int j = 0; j < grid.n(); ++j) f(i, j) = fn(grid.x(i), grid.x(j), grid.half_width());
    }
    return f;
  };
}

}  // namespace

double triangle_impulse(double lambda) {
  if (lambda >= -3.0 && lambda <= 0.0) return 1.0 + lambda / 3.0;
  if (lambda > 0.0 && lambda <= 3.0) return 1.0 - lambda / 3.0;
  return 0.0;
}

double shepp_logan(double x1, double x2, double half_width) {
  const double x = x1 / half_width;
  const double y = x2 / half_width;
  double value = 0.0;
  for (const auto& e : kSheppLogan) {
    const double phi = e.phi_deg * std::numbers::pi / 180.0;
    const double dx = x - e.x0;
    const double dy = y - e.y0;
    const double u = dx * std::cos(phi) + dy * std::sin(phi);
    const double v = -dx * std::sin(phi) + dy * std::cos(phi);
    if (u * u / (e.a * e.a) + v * v / (e.b * e.b) <= 1.0) value += e.intensity;
  }
  return std::clamp(value, 0.0, 1.0);
}

ProblemSpec example_problem(int id) {
  ProblemSpec p;
  p.id = id;
  switch (id) {
    case 1:
      p.tau = 1.0;
      p.conductivity = Conductivity::affine(0.3, -0.2);
      p.initial_data = pointwise([](double x1, double x2, double) {
        return std::exp(-x1 * x1 - x2 * x2);
      });
      p.sobolev_note = "H^p for every p > 0";
      break;
    case 2:
      p.tau = 1.0;
      p.conductivity = Conductivity::affine(0.2, -0.1);
      p.initial_data = pointwise([](double x1, double x2, double) {
        return triangle_impulse(x1) * triangle_impulse(x2);
      });
      p.sobolev_note = "H^1";
      break;
    case 3:
      p.tau = 1.0;
      p.conductivity = Conductivity::constant(0.1);
      p.initial_data = pointwise([](double x1, double x2, double) {
        return (std::abs(x1) <= 5.0 && std::abs(x2) <= 5.0) ? 1.0 : 0.0;
      });
      p.sobolev_note = "H^p for p < 1/2";
      break;
    case 4:
      p.tau = 0.5;
      p.conductivity = Conductivity::constant(0.1);
      p.initial_data = pointwise(shepp_logan);
      p.sobolev_note = "no H^p with p > 0";
      break;
    default:
      throw DomainError("unknown example id " + std::to_string(id) + " (expected 1..4)");
  }
  return p;
}

ProblemSpec custom_problem(RealField u0, double tau, Conductivity conductivity) {
  require_finite(u0, "custom_problem");
  ProblemSpec p;
  p.id = 0;
  p.tau = tau;
  p.conductivity = std::move(conductivity);
  p.initial_data = [field = std::move(u0)](const Grid2D& grid) {
    require_same_grid(field.grid, grid, "custom_problem");
    return field;
  };
  p.sobolev_note = "user supplied";
  (void)build_symbol(tau, p.conductivity.integrate());
  return p;
}

RealField make_initial(const ProblemSpec& problem, const Grid2D& grid) {
  if (!problem.initial_data) throw DomainError("problem has no initial data generator");
  return problem.initial_data(grid);
}

DiffusionSymbol diffusion_symbol(const ProblemSpec& problem) {
  return build_symbol(problem.tau, integrate_conductivity(problem.conductivity));
}

RealField make_exact_data(const ProblemSpec& problem, const Grid2D& grid) {
  return apply_forward(diffusion_symbol(problem), make_initial(problem, grid));
}

}  // namespace mollify
