#pragma once

#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mollify/grid.hpp"

namespace mollify {

/// Time-dependent conductivity gamma(t) on [0, T].
class Conductivity {
 public:
  /// gamma(t) = a + b t. Throws DomainError unless gamma > 0 on [0, T].
  static Conductivity affine(double a, double b, double final_time = 1.0);
  static Conductivity constant(double value, double final_time = 1.0) {
    return affine(value, 0.0, final_time);
  }
  /// Samples (t, gamma(t)) with t strictly increasing from 0 to T and every
  /// gamma sample positive.
  static Conductivity tabulated(std::vector<double> t, std::vector<double> gamma);
  /// CSV with header `t,gamma`.
  static Conductivity from_csv(const std::string& path);

  double final_time() const noexcept { return final_time_; }
  bool is_tabulated() const noexcept { return std::holds_alternative<Table>(form_); }
  double operator()(double t) const;
  std::string describe() const;

  /// Gamma = \int_0^T gamma: analytic for the affine family, composite
  /// Simpson (non-uniform nodes) for tabulated data.
  double integrate() const;

 private:
  struct Affine {
    double a;
    double b;
  };
  struct Table {
    std::vector<double> t;
    std::vector<double> gamma;
  };
  Conductivity(std::variant<Affine, Table> form, double final_time)
      : form_(std::move(form)), final_time_(final_time) {}

  std::variant<Affine, Table> form_;
  double final_time_;
};

double integrate_conductivity(const Conductivity& c);

/// Radial multiplier psi(xi) = exp(-|2 pi xi|^{2 tau} Gamma) of the forward
/// operator, optionally truncated to the ball |xi| <= R.
class DiffusionSymbol {
 public:
  /// Throws DomainError unless 0 < tau <= 1 and Gamma > 0.
  DiffusionSymbol(double tau, double gamma_integral);

  double tau() const noexcept { return tau_; }
  double gamma_integral() const noexcept { return gamma_integral_; }
  double truncation_radius() const noexcept { return truncation_radius_; }
  bool truncated() const noexcept {
    return truncation_radius_ != std::numeric_limits<double>::infinity();
  }

  /// Untruncated value at radius |xi|.
  double exact_value(double radius) const;
  /// Value including the truncation mask.
  double value(double radius) const {
    return radius <= truncation_radius_ ? exact_value(radius) : 0.0;
  }
  double value(double xi1, double xi2) const;

  /// Operator-norm gap sup_{|xi| > R} psi = exp(-(2 pi R)^{2 tau} Gamma);
  /// zero when untruncated.
  double truncation_gap() const;

  /// Node values in grid index order.
  std::vector<double> sample(const Grid2D& grid) const;

 private:
  friend std::pair<DiffusionSymbol, double> truncated_operator(const DiffusionSymbol&, double);

  double tau_;
  double gamma_integral_;
  double truncation_radius_ = std::numeric_limits<double>::infinity();
};

DiffusionSymbol build_symbol(double tau, double gamma_integral);

/// Copy of `symbol` truncated to |xi| <= radius, with the tight bound
/// h >= |||A - A_h|||. Throws DomainError for radius <= 0.
std::pair<DiffusionSymbol, double> truncated_operator(const DiffusionSymbol& symbol,
                                                      double radius);

/// A u0 = F^{-1} psi F u0.
RealField apply_forward(const DiffusionSymbol& symbol, const RealField& u0);
SpectralField apply_forward(const DiffusionSymbol& symbol, const SpectralField& u0_hat);

}  // namespace mollify
