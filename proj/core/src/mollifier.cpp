#include "mollify/mollifier.hpp"

#include <cmath>
#include <numbers>

#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"

namespace mollify {
namespace {

constexpr double kTwoPiSquared = 2.0 * std::numbers::pi * std::numbers::pi;

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("mollifier: beta must be positive and finite");
  }
}

template <typename Fn>
RealField apply_radial(const RealField& f, Fn&& multiplier) {
  const RadialShells shells(f.grid);
  std::vector<double> per_shell(shells.shell_count());
  for (std::size_t s = 0; s < per_shell.size(); ++s) per_shell[s] = multiplier(shells.radius()[s]);
  SpectralField F = forward_ft(f);
  const auto& shell_of = shells.shell_of_node();
  for (std::size_t i = 0; i < F.values.size(); ++i) F.values[i] *= per_shell[shell_of[i]];
  return inverse_ft(F);
}

}  // namespace

MollifierSymbol MollifierSymbol::gaussian() {
  return MollifierSymbol(
      "gaussian", [](double r) { return std::exp(-kTwoPiSquared * r * r); },
      [](double r) { return -std::expm1(-kTwoPiSquared * r * r); }, 2.0);
}

MollifierSymbol MollifierSymbol::custom(std::string name, RadialFn phi_hat, double s,
                                        RadialFn one_minus) {
  if (!phi_hat) throw DomainError("mollifier '" + name + "': missing symbol");
  if (!(s > 0.0)) throw DomainError("mollifier '" + name + "': exponent s must be positive");
  if (!one_minus) {
    one_minus = [phi_hat](double r) { return 1.0 - phi_hat(r); };
  }
  if (std::abs(phi_hat(0.0) - 1.0) > 1e-12) {
    throw DomainError("mollifier '" + name + "': kernel must have unit mass (phi_hat(0) = 1)");
  }
  // Radial decrease and |phi_hat| < 1 on a log-spaced sweep of radii.
  double previous = phi_hat(0.0);
  for (int i = 0; i <= 240; ++i) {
    const double r = std::pow(10.0, -4.0 + i * (7.0 / 240.0));
    const double v = phi_hat(r);
    if (!(std::abs(v) < 1.0) || v > previous) {
      throw DomainError("mollifier '" + name + "': symbol must be radially decreasing with |phi_hat| < 1");
    }
    previous = v;
  }
  // |1 - phi_hat(r)| ~ r^s near the origin.
  const double r0 = 1e-3;
  const double r1 = 1e-2;
  const double slope =
      std::log(std::abs(one_minus(r1)) / std::abs(one_minus(r0))) / std::log(r1 / r0);
  if (!(std::abs(slope - s) <= 0.1 * s)) {
    throw DomainError("mollifier '" + name + "': measured small-frequency exponent " +
                      std::to_string(slope) + " does not match s = " + std::to_string(s));
  }
  return MollifierSymbol(std::move(name), std::move(phi_hat), std::move(one_minus), s);
}

double MollifierSymbol::phi_hat(double beta, double radius) const {
  require_beta(beta);
  return phi_hat_(beta * radius);
}

double MollifierSymbol::phi_hat(double beta, double xi1, double xi2) const {
  return phi_hat(beta, std::hypot(xi1, xi2));
}

double MollifierSymbol::one_minus_phi_hat(double beta, double radius) const {
  require_beta(beta);
  return one_minus_(beta * radius);
}

double MollifierSymbol::penalty(double beta, double radius) const {
  const double d = one_minus_phi_hat(beta, radius);
  return d * d;
}

double MollifierSymbol::penalty(double beta, double xi1, double xi2) const {
  return penalty(beta, std::hypot(xi1, xi2));
}

double phi_hat(const MollifierSymbol& m, double beta, double xi1, double xi2) {
  return m.phi_hat(beta, xi1, xi2);
}

double penalty_symbol(const MollifierSymbol& m, double beta, double xi1, double xi2) {
  return m.penalty(beta, xi1, xi2);
}

RealField apply_mollifier(const MollifierSymbol& m, double beta, const RealField& f) {
  require_beta(beta);
  return apply_radial(f, [&](double r) { return m.phi_hat(beta, r); });
}

RealField apply_penalty_operator(const MollifierSymbol& m, double beta, const RealField& f) {
  require_beta(beta);
  return apply_radial(f, [&](double r) { return m.one_minus_phi_hat(beta, r); });
}

RealField apply_squared_penalty_operator(const MollifierSymbol& m, double beta,
                                         const RealField& f) {
  require_beta(beta);
  return apply_radial(f, [&](double r) { return m.penalty(beta, r); });
}

UnitCircleBounds unit_circle_bounds(const MollifierSymbol& m, double beta, int angles) {
  require_beta(beta);
  if (angles < 1) throw DomainError("unit_circle_bounds: need at least one angle");
  UnitCircleBounds out{std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < angles; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / angles;
    const double v = m.penalty(beta, std::cos(theta), std::sin(theta));
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  return out;
}

}  // namespace mollify
