#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mollify/fourier.hpp"
#include "mollify/problems.hpp"
#include "mollify/regularizer.hpp"

namespace mollify {

struct ExperimentConfig {
  int n = 256;
  double half_width = 10.0;
  /// Finite radius runs the reconstruction with the truncated operator A_h.
  double trunc_radius = std::numeric_limits<double>::infinity();
  /// Worker count for Monte Carlo and rate studies; 0 = hardware concurrency.
  int threads = 1;
};

struct RuleParams {
  Rule rule = Rule::apriori;
  /// apriori: beta = c max(delta, delta_floor)^{1/(2s)}.
  double c = 0.2;
  double s = 2.0;
  double delta_floor = 0.0;
  /// morozov.
  MorozovParams morozov;
  /// fixed.
  double beta = 0.0;

  /// The value reported in the `param` column: c, r or beta.
  double param() const;

  /// Paper defaults: c = 0.2 (0.02 for example 4), s = 2, r = 1, beta0 = 10, q = 0.98.
  static RuleParams apriori_defaults(int example_id);
  static RuleParams morozov_defaults();
};

struct RunRecord {
  int example_id = 0;
  double perc_noise = 0.0;
  double delta = 0.0;
  Rule rule = Rule::apriori;
  double param = 0.0;
  double beta = 0.0;
  double rel_err = 0.0;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  /// Morozov certificate; not part of the CSV row.
  std::optional<SelectionResult> selection;
};

struct MCSummary {
  int example_id = 0;
  double perc_noise = 0.0;
  Rule rule = Rule::apriori;
  int n_reps = 0;
  double mean_rel_err = 0.0;
  double var_rel_err = 0.0;
  double mean_beta = 0.0;
};

enum class FitAxis { loglog_delta, log_vs_loglog };
std::string to_string(FitAxis axis);
FitAxis fit_axis_from_string(const std::string& name);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope x + intercept; needs >= 2 distinct x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct RatePoint {
  double perc_noise = 0.0;
  double delta = 0.0;
  double rel_err = 0.0;
  double beta = 0.0;
};

struct RateFit {
  FitAxis axis = FitAxis::loglog_delta;
  LineFit line;
};

/// Error-versus-noise curve. Both fit axes are computed in terms of the
/// relative noise level perc/100:
///   loglog_delta:  ln(rel_err) against ln(perc/100)
///   log_vs_loglog: ln(rel_err) against ln(-ln(perc/100))
struct RateCurve {
  int example_id = 0;
  Rule rule = Rule::apriori;
  std::vector<RatePoint> points;
  FitAxis fit_axis = FitAxis::log_vs_loglog;
  std::vector<RateFit> fits;

  const LineFit& fit(FitAxis axis) const;
  double fitted_slope() const { return fit(fit_axis).slope; }
};

/// A problem discretised once: initial state, exact data and their spectra,
/// plus the filter. Runs against it only pay for noise, selection and one
/// pair of FFTs. Immutable after construction, so runs may be concurrent.
class Scenario {
 public:
  Scenario(ProblemSpec problem, const ExperimentConfig& config);

  const ProblemSpec& problem() const noexcept { return problem_; }
  const FilterSpec& filter() const noexcept { return filter_; }
  const RealField& initial() const noexcept { return u0_; }
  const RealField& exact_data() const noexcept { return g_; }

  RunRecord run(double perc_noise, const RuleParams& rule, std::uint64_t seed) const;
  /// Reconstruct u_beta^delta from given noisy data with the chosen rule.
  RunRecord run_on_data(const RealField& g_delta, double delta, double perc_noise,
                        const RuleParams& rule, std::uint64_t seed) const;
  /// Same as run_on_data but also returns the reconstruction.
  RunRecord run_on_data(const RealField& g_delta, double delta, double perc_noise,
                        const RuleParams& rule, std::uint64_t seed, RealField* u_out) const;

 private:
  ProblemSpec problem_;
  FilterSpec filter_;
  RealField u0_;
  RealField g_;
  double u0_norm_;
};

RunRecord run_once(int example_id, double perc_noise, const RuleParams& rule,
                   std::uint64_t seed, const ExperimentConfig& config = {});

/// Replication i uses the noise stream derive_seed(seed, i); results are
/// aggregated in index order regardless of the worker count.
MCSummary run_monte_carlo(const Scenario& scenario, double perc_noise, const RuleParams& rule,
                          int n_reps, std::uint64_t seed, int threads = 1);
MCSummary run_monte_carlo(int example_id, double perc_noise, const RuleParams& rule,
                          int n_reps, std::uint64_t seed, const ExperimentConfig& config = {});

/// One run per noise level (strictly decreasing, at least 4), with the
/// seed for level i derived as derive_seed(seed, i).
RateCurve run_rate_study(const Scenario& scenario, const RuleParams& rule,
                         const std::vector<double>& perc_levels, std::uint64_t seed,
                         int threads = 1);
RateCurve run_rate_study(int example_id, const RuleParams& rule,
                         const std::vector<double>& perc_levels, std::uint64_t seed,
                         const ExperimentConfig& config = {});

/// Default rate-study grid, in percent.
std::vector<double> default_rate_levels();

}  // namespace mollify
