#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mollify/diffusion.hpp"
#include "mollify/grid.hpp"
#include "mollify/mollifier.hpp"

namespace mollify {

/// Everything the filter needs: grid, forward multiplier, mollifier.
/// Caches psi per radial shell so repeated evaluations over beta only pay
/// for the mollifier symbol.
class FilterSpec {
 public:
  FilterSpec(Grid2D grid, DiffusionSymbol diffusion, MollifierSymbol mollifier);

  const Grid2D& grid() const noexcept { return grid_; }
  const DiffusionSymbol& diffusion() const noexcept { return diffusion_; }
  const MollifierSymbol& mollifier() const noexcept { return mollifier_; }
  const RadialShells& shells() const noexcept { return shells_; }
  const std::vector<double>& psi_per_shell() const noexcept { return psi_; }

  /// |1 - phi_hat(beta r)|^2 for every shell.
  std::vector<double> penalty_per_shell(double beta) const;
  /// psi / (psi^2 + penalty) for every shell.
  std::vector<double> transfer_per_shell(double beta) const;
  /// mu_beta = min over nodes of psi^2 + penalty; strictly positive.
  double filter_floor(double beta) const;

 private:
  Grid2D grid_;
  DiffusionSymbol diffusion_;
  MollifierSymbol mollifier_;
  RadialShells shells_;
  std::vector<double> psi_;
};

/// Minimiser of J_beta(u) = ||A u - g||^2 + ||(I - C_beta) u||^2, computed as
/// F^{-1}[ psi g_hat / (psi^2 + |1 - phi_hat(beta xi)|^2) ].
RealField reconstruct(const FilterSpec& spec, double beta, const RealField& g);
SpectralField reconstruct_spectrum(const FilterSpec& spec, double beta,
                                   const SpectralField& g_hat);

/// J_beta(u), evaluated in space from apply_forward and the penalty operator.
double objective(const FilterSpec& spec, double beta, const RealField& g, const RealField& u);

/// J_beta(u + p) - J_beta(u), from the exact quadratic expansion
/// 2<Au - g, Ap> + ||Ap||^2 + 2<Du, Dp> + ||Dp||^2 (D = I - C_beta),
/// which avoids cancelling two nearly equal objective values.
double objective_increment(const FilterSpec& spec, double beta, const RealField& g,
                           const RealField& u, const RealField& p);

/// True iff J_beta(u_star) <= J_beta(u_star + p) for `trials` seeded white
/// noise perturbations at each relative scale 1e-1 and 1e-3.
bool variational_check(const FilterSpec& spec, double beta, const RealField& g,
                       const RealField& u_star, int trials, std::uint64_t seed = 7);

/// ||A u_beta - g||, computed in frequency as ||Pi(beta, .) g_hat||.
double discrepancy(const FilterSpec& spec, double beta, const RealField& g_delta);

/// Discrepancy for one data set at many beta: the data spectrum is reduced
/// to per-shell energies once, so each evaluation is O(#shells).
class DiscrepancyEvaluator {
 public:
  DiscrepancyEvaluator(const FilterSpec& spec, const SpectralField& g_hat);
  double operator()(double beta) const;
  /// ||g_delta||, the limit of the discrepancy as beta -> infinity.
  double data_norm() const noexcept { return data_norm_; }

 private:
  const FilterSpec* spec_;
  std::vector<double> shell_energy_;
  double data_norm_;
};

enum class Rule { apriori, morozov, fixed };
std::string to_string(Rule rule);
Rule rule_from_string(const std::string& name);

struct SelectionResult {
  double beta = 0.0;
  Rule rule = Rule::apriori;
  /// Achieved ||A u_beta - g_delta|| (morozov only; 0 otherwise).
  double residual = 0.0;
  /// delta + delta^r (morozov only).
  double target = 0.0;
  int iterations = 0;
  /// Last rejected iterate beta/q and its residual; residual > target.
  /// Zero when the initial guess was already admissible.
  double rejected_beta = 0.0;
  double rejected_residual = 0.0;
};

/// beta = c delta^{1/(2s)}. DomainError for nonpositive inputs.
SelectionResult select_beta_apriori(double delta, double c, double s);

struct MorozovParams {
  double r = 1.0;
  double beta0 = 10.0;
  double q = 0.98;
  int max_iterations = 5000;
};

/// Geometric descent beta_k = beta0 q^k until ||Pi(beta_k) g_hat|| <= delta + delta^r.
/// Throws NoiseDominatedError when delta + delta^r > ||g_delta|| / 2 and
/// NonConvergenceError when the cap is reached.
SelectionResult select_beta_morozov(const FilterSpec& spec, const RealField& g_delta,
                                    double delta, const MorozovParams& params = {});
SelectionResult select_beta_morozov(const DiscrepancyEvaluator& eval, double delta,
                                    const MorozovParams& params = {});

/// (h + delta/rho)^{1/(2s)}. Only meaningful in synthetic studies where rho
/// is known by construction.
double noisy_operator_beta(double h, double delta, double rho, double s);

}  // namespace mollify
