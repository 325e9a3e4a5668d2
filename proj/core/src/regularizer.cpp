#include "mollify/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"

namespace mollify {
namespace {

void require_beta(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError(std::string(what) + ": beta must be positive and finite");
  }
}

double inner(const RealField& a, const RealField& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.values[i] * b.values[i];
  const double kappa = a.grid.spacing();
  return kappa * kappa * sum;
}

RealField subtract(RealField a, const RealField& b) {
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
  return a;
}

}  // namespace

FilterSpec::FilterSpec(Grid2D grid, DiffusionSymbol diffusion, MollifierSymbol mollifier)
    : grid_(grid),
      diffusion_(std::move(diffusion)),
      mollifier_(std::move(mollifier)),
      shells_(grid_) {
  psi_.resize(shells_.shell_count());
  for (std::size_t s = 0; s < psi_.size(); ++s) psi_[s] = diffusion_.value(shells_.radius()[s]);
}

std::vector<double> FilterSpec::penalty_per_shell(double beta) const {
  require_beta(beta, "penalty");
  std::vector<double> out(psi_.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = mollifier_.penalty(beta, shells_.radius()[s]);
  return out;
}

std::vector<double> FilterSpec::transfer_per_shell(double beta) const {
  auto out = penalty_per_shell(beta);
  for (std::size_t s = 0; s < out.size(); ++s) {
    const double denom = psi_[s] * psi_[s] + out[s];
    out[s] = denom > 0.0 ? psi_[s] / denom : 0.0;
  }
  return out;
}

double FilterSpec::filter_floor(double beta) const {
  const auto pen = penalty_per_shell(beta);
  double mu = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < pen.size(); ++s) mu = std::min(mu, psi_[s] * psi_[s] + pen[s]);
  return mu;
}

SpectralField reconstruct_spectrum(const FilterSpec& spec, double beta,
                                   const SpectralField& g_hat) {
  require_beta(beta, "reconstruct");
  require_same_grid(spec.grid(), g_hat.grid, "reconstruct");
  const auto transfer = spec.transfer_per_shell(beta);
  const auto& shell_of = spec.shells().shell_of_node();
  SpectralField out = g_hat;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= transfer[shell_of[i]];
  return out;
}

RealField reconstruct(const FilterSpec& spec, double beta, const RealField& g) {
  require_beta(beta, "reconstruct");
  require_same_grid(spec.grid(), g.grid, "reconstruct");
  return inverse_ft(reconstruct_spectrum(spec, beta, forward_ft(g)));
}

double objective(const FilterSpec& spec, double beta, const RealField& g, const RealField& u) {
  require_same_grid(spec.grid(), g.grid, "objective");
  require_same_grid(spec.grid(), u.grid, "objective");
  const RealField residual = subtract(apply_forward(spec.diffusion(), u), g);
  const RealField penalty = apply_penalty_operator(spec.mollifier(), beta, u);
  return inner(residual, residual) + inner(penalty, penalty);
}

double objective_increment(const FilterSpec& spec, double beta, const RealField& g,
                           const RealField& u, const RealField& p) {
  require_same_grid(spec.grid(), g.grid, "objective_increment");
  require_same_grid(spec.grid(), u.grid, "objective_increment");
  require_same_grid(spec.grid(), p.grid, "objective_increment");
  const RealField residual = subtract(apply_forward(spec.diffusion(), u), g);
  const RealField ap = apply_forward(spec.diffusion(), p);
  const RealField du = apply_penalty_operator(spec.mollifier(), beta, u);
  const RealField dp = apply_penalty_operator(spec.mollifier(), beta, p);
  return 2.0 * inner(residual, ap) + inner(ap, ap) + 2.0 * inner(du, dp) + inner(dp, dp);
}

bool variational_check(const FilterSpec& spec, double beta, const RealField& g,
                       const RealField& u_star, int trials, std::uint64_t seed) {
  require_same_grid(spec.grid(), g.grid, "variational_check");
  require_same_grid(spec.grid(), u_star.grid, "variational_check");
  require_beta(beta, "variational_check");
  // Same expansion as objective_increment, evaluated on the spectral side so
  // each trial costs one transform.
  const auto& shell_of = spec.shells().shell_of_node();
  const auto& psi = spec.psi_per_shell();
  std::vector<double> damp = spec.penalty_per_shell(beta);
  for (double& d : damp) d = std::sqrt(d);
  const SpectralField u_hat = forward_ft(u_star);
  const SpectralField g_hat = forward_ft(g);
  std::vector<std::complex<double>> res(u_hat.values.size());
  std::vector<std::complex<double>> du(u_hat.values.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    const int s = shell_of[i];
    res[i] = psi[s] * u_hat.values[i] - g_hat.values[i];
    du[i] = damp[s] * u_hat.values[i];
  }
  const double w = spec.grid().xi_spacing() * spec.grid().xi_spacing();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double scale_ref = std::max(l2_norm(u_star), std::numeric_limits<double>::min());
  for (double scale : {1e-1, 1e-3}) {
    for (int t = 0; t < trials; ++t) {
      RealField p(spec.grid());
      for (double& v : p.values) v = normal(rng);
      const double factor = scale * scale_ref / l2_norm(p);
      for (double& v : p.values) v *= factor;
      const SpectralField p_hat = forward_ft(p);
      double inc = 0.0;
      for (std::size_t i = 0; i < res.size(); ++i) {
        const int s = shell_of[i];
        const std::complex<double> ap = psi[s] * p_hat.values[i];
        const std::complex<double> dp = damp[s] * p_hat.values[i];
        inc += 2.0 * (std::conj(res[i]) * ap).real() + std::norm(ap) +
               2.0 * (std::conj(du[i]) * dp).real() + std::norm(dp);
      }
      if (w * inc < 0.0) return false;
    }
  }
  return true;
}

DiscrepancyEvaluator::DiscrepancyEvaluator(const FilterSpec& spec, const SpectralField& g_hat)
    : spec_(&spec), shell_energy_(spec.shells().shell_count(), 0.0) {
  require_same_grid(spec.grid(), g_hat.grid, "discrepancy");
  require_finite(g_hat, "discrepancy");
  const auto& shell_of = spec.shells().shell_of_node();
  for (std::size_t i = 0; i < g_hat.values.size(); ++i) {
    shell_energy_[shell_of[i]] += std::norm(g_hat.values[i]);
  }
  double total = 0.0;
  for (double e : shell_energy_) total += e;
  data_norm_ = spec.grid().xi_spacing() * std::sqrt(total);
}

double DiscrepancyEvaluator::operator()(double beta) const {
  const auto pen = spec_->penalty_per_shell(beta);
  const auto& psi = spec_->psi_per_shell();
  double sum = 0.0;
  for (std::size_t s = 0; s < pen.size(); ++s) {
    const double denom = psi[s] * psi[s] + pen[s];
    const double pi = denom > 0.0 ? pen[s] / denom : 0.0;
    sum += pi * pi * shell_energy_[s];
  }
  return spec_->grid().xi_spacing() * std::sqrt(sum);
}

double discrepancy(const FilterSpec& spec, double beta, const RealField& g_delta) {
  require_beta(beta, "discrepancy");
  return DiscrepancyEvaluator(spec, forward_ft(g_delta))(beta);
}

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::apriori: return "apriori";
    case Rule::morozov: return "morozov";
    case Rule::fixed: return "fixed";
  }
  return "unknown";
}

Rule rule_from_string(const std::string& name) {
  if (name == "apriori") return Rule::apriori;
  if (name == "morozov") return Rule::morozov;
  if (name == "fixed") return Rule::fixed;
  throw DomainError("unknown rule '" + name + "' (expected apriori, morozov or fixed)");
}

SelectionResult select_beta_apriori(double delta, double c, double s) {
  if (!(delta > 0.0) || !(c > 0.0) || !(s > 0.0)) {
    throw DomainError("a-priori rule: delta, c and s must be positive");
  }
  SelectionResult out;
  out.rule = Rule::apriori;
  out.beta = c * std::pow(delta, 1.0 / (2.0 * s));
  return out;
}

SelectionResult select_beta_morozov(const DiscrepancyEvaluator& eval, double delta,
                                    const MorozovParams& params) {
  if (!(params.r > 0.0 && params.r <= 1.0)) throw DomainError("morozov: r must lie in (0, 1]");
  if (!(params.q > 0.0 && params.q < 1.0)) throw DomainError("morozov: q must lie in (0, 1)");
  if (!(params.beta0 > 0.0)) throw DomainError("morozov: beta0 must be positive");
  if (!(delta >= 0.0)) throw DomainError("morozov: delta must be nonnegative");

  SelectionResult out;
  out.rule = Rule::morozov;
  out.target = delta + std::pow(delta, params.r);
  if (out.target > 0.5 * eval.data_norm()) {
    throw NoiseDominatedError("morozov: delta + delta^r = " + std::to_string(out.target) +
                              " exceeds ||g_delta||/2 = " +
                              std::to_string(0.5 * eval.data_norm()));
  }
  double beta = params.beta0;
  double residual = eval(beta);
  int iterations = 0;
  while (residual > out.target) {
    if (iterations >= params.max_iterations) {
      throw NonConvergenceError("morozov: no admissible beta after " +
                                std::to_string(params.max_iterations) + " iterations (beta = " +
                                std::to_string(beta) + ")");
    }
    out.rejected_beta = beta;
    out.rejected_residual = residual;
    beta *= params.q;
    residual = eval(beta);
    ++iterations;
  }
  out.beta = beta;
  out.residual = residual;
  out.iterations = iterations;
  return out;
}

SelectionResult select_beta_morozov(const FilterSpec& spec, const RealField& g_delta,
                                    double delta, const MorozovParams& params) {
  require_same_grid(spec.grid(), g_delta.grid, "morozov");
  const DiscrepancyEvaluator eval(spec, forward_ft(g_delta));
  return select_beta_morozov(eval, delta, params);
}

double noisy_operator_beta(double h, double delta, double rho, double s) {
  if (!(h >= 0.0) || !(delta >= 0.0) || !(rho > 0.0) || !(s > 0.0) || h + delta / rho <= 0.0) {
    throw DomainError("noisy_operator_beta: need h, delta >= 0 (not both zero), rho, s > 0");
  }
  return std::pow(h + delta / rho, 1.0 / (2.0 * s));
}

}  // namespace mollify
