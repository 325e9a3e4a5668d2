#pragma once

#include <cstdint>

namespace mollify {

/// f_q(t) = (-ln t)^{-q} on (0, 1).
double f_q(double q, double t);

/// Theta_q(t) = sqrt(t) f_q(t), the function behind the a-priori rule
/// beta = (Theta_q^{-1}(delta / rho))^{1/(2s)}.
double theta_q(double q, double t);

/// Root of Theta_q(t) = y on the increasing branch (0, e^{-2q}], found by
/// bisection in log t until the bracket collapses to adjacent doubles.
/// DomainError when y is outside (0, Theta_q(e^{-2q})].
double theta_inverse(double q, double y);

/// Theta(t) = t f_{q/2}(t), the rate function of the discrepancy rule.
double theta_log(double q, double t);
/// Inverse of theta_log on its increasing branch (0, e^{-q/2}]; behaves like
/// y (-ln y)^{q/2} as y -> 0.
double theta_log_inverse(double q, double y);

/// a-priori rule for known source magnitude rho.
double apriori_beta_from_source(double q, double delta, double rho, double s);

/// Constants linking ||u0||_{H^p} <= E to the logarithmic source condition
/// with q = p / (2 tau): the forward map uses the max form, the converse the
/// min form of (2 (2 pi)^{2 tau} Gamma)^{+-p/(2 tau)} against 1.
double source_constant_forward(double p, double tau, double gamma_integral);
double source_constant_reverse(double p, double tau, double gamma_integral);

struct FqInequalityReport {
  bool passed = true;
  long samples = 0;
  long failures = 0;
  /// min over samples of (rhs - lhs) / rhs; negative means a violation.
  double worst_margin = 0.0;
};

/// Samples (lambda, t, a, b) over the domains of the two inequality
/// families for f_q and checks them pointwise:
///   lambda <= 1, t in (0,1):           f_q(l t^a) <= max{1, (b/a)^q} f_q(l t^b)
///   lambda > 1,  t in (0, l^{-2/a}):   f_q(l t^a) <= max{1, ((2b-a)/a)^q} f_q(l t^b)
///   lambda <= 1, t in (0,1):           f_q(l t) <= f_q(t)
///   lambda > 1,  t in (0, l^{-2}):     f_q(l t) <= 2^q f_q(t)
/// `samples` draws are made per family.
FqInequalityReport check_fq_inequalities(double q, long samples, std::uint64_t seed);

}  // namespace mollify
