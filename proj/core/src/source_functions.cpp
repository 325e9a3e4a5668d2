#include "mollify/source_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "mollify/errors.hpp"

namespace mollify {
namespace {

void require_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("source function: q must be positive");
}

// Root of log_theta(s) = log_y for s = ln t in (-inf, s_max], where
// log_theta is increasing. Bisection runs until the bracket cannot shrink.
double invert_increasing_log(const std::function<double(double)>& log_theta, double s_max,
                             double log_y) {
  double hi = s_max;
  double lo = std::min(2.0 * log_y, s_max) - 1.0;
  while (log_theta(lo) >= log_y) {
    lo = s_max - 2.0 * (s_max - lo);
    if (!std::isfinite(lo)) throw DomainError("theta inverse: failed to bracket the root");
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (log_theta(mid) < log_y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick the endpoint with the smaller residual.
  const double r_lo = std::abs(log_theta(lo) - log_y);
  const double r_hi = std::abs(log_theta(hi) - log_y);
  return std::exp(r_lo < r_hi ? lo : hi);
}

double positive_power(double base, double exponent) {
  return base > 1.0 ? std::pow(base, exponent) : 1.0;
}

}  // namespace

double f_q(double q, double t) {
  require_q(q);
  if (!(t > 0.0 && t < 1.0)) throw DomainError("f_q: t must lie in (0, 1)");
  return std::pow(-std::log(t), -q);
}

double theta_q(double q, double t) { return std::sqrt(t) * f_q(q, t); }

double theta_inverse(double q, double y) {
  require_q(q);
  const double s_max = -2.0 * q;
  auto log_theta = [q](double s) { return 0.5 * s - q * std::log(-s); };
  if (!(y > 0.0) || std::log(y) > log_theta(s_max)) {
    throw DomainError("theta_inverse: y must lie in (0, Theta_q(e^{-2q})]");
  }
  return invert_increasing_log(log_theta, s_max, std::log(y));
}

double theta_log(double q, double t) { return t * f_q(0.5 * q, t); }

double theta_log_inverse(double q, double y) {
  require_q(q);
  const double s_max = -0.5 * q;
  auto log_theta = [q](double s) { return s - 0.5 * q * std::log(-s); };
  if (!(y > 0.0) || std::log(y) > log_theta(s_max)) {
    throw DomainError("theta_log_inverse: y must lie in (0, Theta(e^{-q/2})]");
  }
  return invert_increasing_log(log_theta, s_max, std::log(y));
}

double apriori_beta_from_source(double q, double delta, double rho, double s) {
  if (!(delta > 0.0) || !(rho > 0.0) || !(s > 0.0)) {
    throw DomainError("apriori_beta_from_source: delta, rho and s must be positive");
  }
  return std::pow(theta_inverse(q, delta / rho), 1.0 / (2.0 * s));
}

double source_constant_forward(double p, double tau, double gamma_integral) {
  const double base = 2.0 * std::pow(2.0 * std::numbers::pi, 2.0 * tau) * gamma_integral;
  return std::max(1.0, std::pow(base, p / (2.0 * tau)));
}

double source_constant_reverse(double p, double tau, double gamma_integral) {
  const double base = 2.0 * std::pow(2.0 * std::numbers::pi, 2.0 * tau) * gamma_integral;
  return std::min(1.0, std::pow(base, -p / (2.0 * tau)));
}

FqInequalityReport check_fq_inequalities(double q, long samples, std::uint64_t seed) {
  require_q(q);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) {
    return std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo));
  };
  // ln t strictly below ln(upper), spread over 50 units.
  auto log_below = [&](double log_upper) { return log_upper - 50.0 * (1.0 - unit(rng)); };
  // f_q evaluated from ln of its argument, so that tiny arguments do not underflow.
  auto fq_log = [q](double log_arg) { return std::pow(-log_arg, -q); };

  FqInequalityReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  auto record = [&](double lhs, double rhs) {
    ++report.samples;
    const double margin = (rhs - lhs) / rhs;
    report.worst_margin = std::min(report.worst_margin, margin);
    if (!(lhs <= rhs * (1.0 + 1e-12))) {
      ++report.failures;
      report.passed = false;
    }
  };

  for (long i = 0; i < samples; ++i) {
    // lambda <= 1, t in (0, 1).
    const double ll = log_uniform(1e-3, 1.0);
    const double a = std::exp(log_uniform(0.05, 20.0));
    const double b = std::exp(log_uniform(0.05, 20.0));
    const double lt = log_below(0.0);
    record(fq_log(ll + a * lt), std::max(1.0, std::pow(b / a, q)) * fq_log(ll + b * lt));
  }
  for (long i = 0; i < samples; ++i) {
    // lambda > 1, t in (0, lambda^{-2/a}); lambda t^b is kept inside (0, 1).
    const double ll = log_uniform(1.0 + 1e-9, 1e3);
    const double a = std::exp(log_uniform(0.05, 20.0));
    const double b = std::exp(log_uniform(0.05, 20.0));
    const double lt = log_below(std::min(-2.0 * ll / a, -ll / b));
    record(fq_log(ll + a * lt), positive_power((2.0 * b - a) / a, q) * fq_log(ll + b * lt));
  }
  for (long i = 0; i < samples; ++i) {
    // lambda <= 1, t in (0, 1).
    const double ll = log_uniform(1e-3, 1.0);
    const double lt = log_below(0.0);
    record(fq_log(ll + lt), fq_log(lt));
  }
  for (long i = 0; i < samples; ++i) {
    // lambda > 1, t in (0, lambda^{-2}).
    const double ll = log_uniform(1.0 + 1e-9, 1e3);
    const double lt = log_below(-2.0 * ll);
    record(fq_log(ll + lt), std::pow(2.0, q) * fq_log(lt));
  }
  return report;
}

}  // namespace mollify
