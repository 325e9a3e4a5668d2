#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"
#include "mollify/problems.hpp"
#include "oracles.hpp"

using namespace mollify;
using std::numbers::pi;

namespace {

// Value of make_initial at the node nearest to (a, b).
double at(const RealField& f, double a, double b) {
  const Grid2D& g = f.grid;
  auto idx = [&](double x) {
    return std::clamp(static_cast<int>(std::floor((x + g.half_width()) / g.spacing())), 0,
                      g.n() - 1);
  };
  return f(idx(a), idx(b));
}

}  // namespace

TEST(Problems, Catalogue) {
  for (int id = 1; id <= 4; ++id) {
    const ProblemSpec p = example_problem(id);
    EXPECT_EQ(p.id, id);
    EXPECT_EQ(p.conductivity.final_time(), 1.0);
  }
  EXPECT_EQ(example_problem(4).tau, 0.5);
  EXPECT_NEAR(integrate_conductivity(example_problem(1).conductivity), 0.2, 1e-15);
  EXPECT_NEAR(integrate_conductivity(example_problem(2).conductivity), 0.15, 1e-15);
  EXPECT_NEAR(integrate_conductivity(example_problem(3).conductivity), 0.1, 1e-15);
  EXPECT_THROW(example_problem(0), DomainError);
  EXPECT_THROW(example_problem(5), DomainError);
}

TEST(Problems, PointValues) {
  // Pointwise definitions at exact coordinates.
  EXPECT_EQ(triangle_impulse(0.0), 1.0);
  EXPECT_EQ(triangle_impulse(3.0), 0.0);
  EXPECT_EQ(triangle_impulse(-3.5), 0.0);
  EXPECT_DOUBLE_EQ(triangle_impulse(1.5), 0.5);
  EXPECT_DOUBLE_EQ(triangle_impulse(-1.5), 0.5);

  // The half-sample grid has no node at the origin; use a fine grid and
  // check nearest nodes.
  const Grid2D g(400, 10.0);  // nodes at +-0.025, ..., spacing 0.05
  const RealField u1 = make_initial(example_problem(1), g);
  EXPECT_NEAR(at(u1, 0.0, 0.0), 1.0, 2e-3);
  EXPECT_DOUBLE_EQ(u1(200, 200), std::exp(-2 * 0.025 * 0.025));
  const RealField u2 = make_initial(example_problem(2), g);
  EXPECT_NEAR(at(u2, 0.0, 0.0), 1.0, 0.02);
  EXPECT_EQ(at(u2, 3.01, 0.0), 0.0);
  const RealField u3 = make_initial(example_problem(3), g);
  EXPECT_EQ(at(u3, 4.9, 4.9), 1.0);
  EXPECT_EQ(at(u3, 5.1, 0.0), 0.0);
  EXPECT_EQ(at(u3, 0.0, -5.1), 0.0);
}

TEST(Problems, SheppLogan) {
  const double L = 10.0;
  // Outside the skull and beyond the box: zero.
  EXPECT_EQ(shepp_logan(9.9, 9.9, L), 0.0);
  // Inside the brain region the modified table gives 1 - 0.8 = 0.2.
  EXPECT_NEAR(shepp_logan(0.0, -3.0, L), 0.2, 1e-12);
  const RealField u4 = make_initial(example_problem(4), Grid2D(256, L));
  double lo = 1.0;
  double hi = 0.0;
  for (double v : u4.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LE(hi, 1.0);
  EXPECT_EQ(hi, 1.0);  // the skull rim
}

TEST(Problems, ExactDataSmoothing) {
  const Grid2D g(256, 10.0);
  const RealField u3 = make_initial(example_problem(3), g);
  const RealField g3 = make_exact_data(example_problem(3), g);
  EXPECT_LT(l2_norm(g3), l2_norm(u3));
  // Deterministic from (id, N, L).
  EXPECT_EQ(make_exact_data(example_problem(3), g).values, g3.values);
}

TEST(Problems, ExampleOneDataIsGaussian) {
  // F[exp(-|x|^2)](xi) = pi exp(-pi^2 |xi|^2); psi_1 = exp(-0.8 pi^2 |xi|^2).
  const Grid2D g(64, 10.0);
  const RealField data = make_exact_data(example_problem(1), g);
  SpectralField expect(g);
  for (int k = 0; k < 64; ++k) {
    for (int l = 0; l < 64; ++l) {
      const double r2 = g.xi(k) * g.xi(k) + g.xi(l) * g.xi(l);
      expect(k, l) = pi * std::exp(-pi * pi * r2) * std::exp(-0.8 * pi * pi * r2);
    }
  }
  EXPECT_LE(oracle::rel_diff(oracle::direct_dft(data).values, expect.values), 1e-6);
}

TEST(Problems, CustomAndZero) {
  const Grid2D g(32, 4.0);
  const ProblemSpec zero = custom_problem(RealField(g), 1.0, Conductivity::constant(0.1));
  EXPECT_EQ(zero.id, 0);
  for (double v : make_exact_data(zero, g).values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(make_initial(zero, Grid2D(16, 4.0)), DimensionError);
  EXPECT_THROW(custom_problem(RealField(g), 2.0, Conductivity::constant(0.1)), DomainError);
}

TEST(Problems, TailMassIncreasesWithRoughness) {
  const Grid2D g(256, 10.0);
  const double half = g.omega() / 2.0;
  double prev = -1.0;
  for (int id = 1; id <= 4; ++id) {
    const SpectralField U = forward_ft(make_initial(example_problem(id), g));
    double tail = 0.0;
    double total = 0.0;
    for (int k = 0; k < g.n(); ++k) {
      for (int l = 0; l < g.n(); ++l) {
        const double e = std::norm(U(k, l));
        total += e;
        if (std::sqrt(g.xi_norm_squared(k, l)) > half) tail += e;
      }
    }
    EXPECT_GT(tail / total, prev) << id;
    prev = tail / total;
  }
}
