#pragma once

#include <functional>
#include <string>

#include "mollify/grid.hpp"

namespace mollify {

/// Radial mollifier family C_beta f = phi_beta * f, represented by the
/// Fourier symbol phi_hat(beta |xi|) of a unit-mass kernel.
///
/// The symbol must satisfy phi_hat(0) = 1, be radially decreasing with
/// |phi_hat| < 1 away from the origin, and obey |1 - phi_hat(xi)| ~ |xi|^s
/// near zero. `s` is what the parameter choice rules key off.
class MollifierSymbol {
 public:
  using RadialFn = std::function<double(double)>;

  /// Standard normal kernel (1/2pi) exp(-|x|^2/2): phi_hat = exp(-2 pi^2 |xi|^2), s = 2.
  static MollifierSymbol gaussian();

  /// Registers an alternate kernel. `phi_hat` maps |xi| to the symbol;
  /// `one_minus` (optional) maps |xi| to 1 - phi_hat without cancellation.
  /// The invariants above are checked by sampling; DomainError on failure.
  static MollifierSymbol custom(std::string name, RadialFn phi_hat, double s,
                                RadialFn one_minus = {});

  const std::string& name() const noexcept { return name_; }
  double exponent() const noexcept { return s_; }

  /// phi_hat(beta |xi|). DomainError for beta <= 0.
  double phi_hat(double beta, double radius) const;
  double phi_hat(double beta, double xi1, double xi2) const;

  /// 1 - phi_hat(beta |xi|), accurate for small arguments.
  double one_minus_phi_hat(double beta, double radius) const;

  /// |1 - phi_hat(beta xi)|^2.
  double penalty(double beta, double radius) const;
  double penalty(double beta, double xi1, double xi2) const;

 private:
  MollifierSymbol(std::string name, RadialFn phi_hat, RadialFn one_minus, double s)
      : name_(std::move(name)), phi_hat_(std::move(phi_hat)),
        one_minus_(std::move(one_minus)), s_(s) {}

  std::string name_;
  RadialFn phi_hat_;
  RadialFn one_minus_;
  double s_;
};

double phi_hat(const MollifierSymbol& m, double beta, double xi1, double xi2);
double penalty_symbol(const MollifierSymbol& m, double beta, double xi1, double xi2);

/// C_beta f.
RealField apply_mollifier(const MollifierSymbol& m, double beta, const RealField& f);
/// (I - C_beta) f, applied as the multiplier 1 - phi_hat.
RealField apply_penalty_operator(const MollifierSymbol& m, double beta, const RealField& f);
/// (I - C_beta)^* (I - C_beta) f, i.e. the multiplier |1 - phi_hat|^2.
RealField apply_squared_penalty_operator(const MollifierSymbol& m, double beta,
                                         const RealField& f);

/// m_beta = min and M_beta = max of |1 - phi_hat(beta xi)|^2 over |xi| = 1,
/// sampled at `angles` points of the unit circle.
struct UnitCircleBounds {
  double min;
  double max;
};
UnitCircleBounds unit_circle_bounds(const MollifierSymbol& m, double beta, int angles = 360);

}  // namespace mollify
