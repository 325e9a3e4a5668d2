#include "mollify/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "mollify/errors.hpp"
#include "mollify/noise.hpp"

namespace mollify {
namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers join.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = std::min(resolve_threads(threads), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(count);
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

DiffusionSymbol scenario_symbol(const ProblemSpec& problem, const ExperimentConfig& config) {
  DiffusionSymbol symbol = diffusion_symbol(problem);
  if (std::isfinite(config.trunc_radius)) symbol = truncated_operator(symbol, config.trunc_radius).first;
  return symbol;
}

}  // namespace

double RuleParams::param() const {
  switch (rule) {
    case Rule::apriori: return c;
    case Rule::morozov: return morozov.r;
    case Rule::fixed: return beta;
  }
  return 0.0;
}

RuleParams RuleParams::apriori_defaults(int example_id) {
  RuleParams p;
  p.rule = Rule::apriori;
  p.c = example_id == 4 ? 0.02 : 0.2;
  p.s = 2.0;
  return p;
}

RuleParams RuleParams::morozov_defaults() {
  RuleParams p;
  p.rule = Rule::morozov;
  return p;
}

std::string to_string(FitAxis axis) {
  return axis == FitAxis::loglog_delta ? "loglog_delta" : "log_vs_loglog";
}

FitAxis fit_axis_from_string(const std::string& name) {
  if (name == "loglog_delta") return FitAxis::loglog_delta;
  if (name == "log_vs_loglog") return FitAxis::log_vs_loglog;
  throw DomainError("unknown fit axis '" + name + "'");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_line: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_line: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

const LineFit& RateCurve::fit(FitAxis axis) const {
  for (const auto& f : fits) {
    if (f.axis == axis) return f.line;
  }
  throw DomainError("rate curve has no fit on axis " + to_string(axis));
}

Scenario::Scenario(ProblemSpec problem, const ExperimentConfig& config)
    : problem_(std::move(problem)),
      filter_(Grid2D(config.n, config.half_width), scenario_symbol(problem_, config),
              MollifierSymbol::gaussian()),
      u0_(make_initial(problem_, filter_.grid())),
      g_(make_exact_data(problem_, filter_.grid())),
      u0_norm_(l2_norm(u0_)) {
  if (!(u0_norm_ > 0.0)) throw DomainError("scenario: initial state is identically zero");
}

RunRecord Scenario::run(double perc_noise, const RuleParams& rule, std::uint64_t seed) const {
  const auto t0 = std::chrono::steady_clock::now();
  NoisyData noisy = add_noise(g_, NoiseSpec{perc_noise, seed});
  RunRecord rec = run_on_data(noisy.g_delta, noisy.delta, perc_noise, rule, seed, nullptr);
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

RunRecord Scenario::run_on_data(const RealField& g_delta, double delta, double perc_noise,
                                const RuleParams& rule, std::uint64_t seed) const {
  return run_on_data(g_delta, delta, perc_noise, rule, seed, nullptr);
}

RunRecord Scenario::run_on_data(const RealField& g_delta, double delta, double perc_noise,
                                const RuleParams& rule, std::uint64_t seed,
                                RealField* u_out) const {
  const auto t0 = std::chrono::steady_clock::now();
  require_same_grid(filter_.grid(), g_delta.grid, "run");
  const SpectralField g_hat = forward_ft(g_delta);

  RunRecord rec;
  rec.example_id = problem_.id;
  rec.perc_noise = perc_noise;
  rec.delta = delta;
  rec.rule = rule.rule;
  rec.param = rule.param();
  rec.seed = seed;

  switch (rule.rule) {
    case Rule::apriori:
      rec.beta = select_beta_apriori(std::max(delta, rule.delta_floor), rule.c, rule.s).beta;
      break;
    case Rule::morozov: {
      const DiscrepancyEvaluator eval(filter_, g_hat);
      rec.selection = select_beta_morozov(eval, delta, rule.morozov);
      rec.beta = rec.selection->beta;
      break;
    }
    case Rule::fixed:
      if (!(rule.beta > 0.0)) throw DomainError("fixed rule: beta must be positive");
      rec.beta = rule.beta;
      break;
  }

  RealField u = inverse_ft(reconstruct_spectrum(filter_, rec.beta, g_hat));
  rec.rel_err = l2_distance(u, u0_) / u0_norm_;
  if (u_out != nullptr) *u_out = std::move(u);
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

RunRecord run_once(int example_id, double perc_noise, const RuleParams& rule,
                   std::uint64_t seed, const ExperimentConfig& config) {
  const Scenario scenario(example_problem(example_id), config);
  return scenario.run(perc_noise, rule, seed);
}

MCSummary run_monte_carlo(const Scenario& scenario, double perc_noise, const RuleParams& rule,
                          int n_reps, std::uint64_t seed, int threads) {
  if (n_reps < 1) throw DomainError("run_monte_carlo: n_reps must be at least 1");
  std::vector<double> rel_err(n_reps);
  std::vector<double> beta(n_reps);
  parallel_for(n_reps, threads, [&](int i) {
    const RunRecord rec = scenario.run(perc_noise, rule, derive_seed(seed, static_cast<std::uint64_t>(i)));
    rel_err[i] = rec.rel_err;
    beta[i] = rec.beta;
  });

  MCSummary out;
  out.example_id = scenario.problem().id;
  out.perc_noise = perc_noise;
  out.rule = rule.rule;
  out.n_reps = n_reps;
  for (int i = 0; i < n_reps; ++i) {
    out.mean_rel_err += rel_err[i];
    out.mean_beta += beta[i];
  }
  out.mean_rel_err /= n_reps;
  out.mean_beta /= n_reps;
  if (n_reps > 1) {
    double ss = 0.0;
    for (double e : rel_err) ss += (e - out.mean_rel_err) * (e - out.mean_rel_err);
    out.var_rel_err = ss / (n_reps - 1);
  }
  return out;
}

MCSummary run_monte_carlo(int example_id, double perc_noise, const RuleParams& rule,
                          int n_reps, std::uint64_t seed, const ExperimentConfig& config) {
  const Scenario scenario(example_problem(example_id), config);
  return run_monte_carlo(scenario, perc_noise, rule, n_reps, seed, config.threads);
}

RateCurve run_rate_study(const Scenario& scenario, const RuleParams& rule,
                         const std::vector<double>& perc_levels, std::uint64_t seed,
                         int threads) {
  if (perc_levels.size() < 4) throw DomainError("rate study: need at least 4 noise levels");
  for (std::size_t i = 0; i < perc_levels.size(); ++i) {
    if (!(perc_levels[i] > 0.0 && perc_levels[i] < 100.0)) {
      throw DomainError("rate study: noise levels must lie in (0, 100) percent");
    }
    if (i > 0 && !(perc_levels[i] < perc_levels[i - 1])) {
      throw DomainError("rate study: noise levels must be strictly decreasing");
    }
  }

  RateCurve curve;
  curve.example_id = scenario.problem().id;
  curve.rule = rule.rule;
  curve.fit_axis = curve.example_id == 1 ? FitAxis::loglog_delta : FitAxis::log_vs_loglog;
  curve.points.resize(perc_levels.size());
  parallel_for(static_cast<int>(perc_levels.size()), threads, [&](int i) {
    const RunRecord rec = scenario.run(perc_levels[i], rule, derive_seed(seed, static_cast<std::uint64_t>(i)));
    curve.points[i] = RatePoint{perc_levels[i], rec.delta, rec.rel_err, rec.beta};
  });

  std::vector<double> x_delta;
  std::vector<double> x_loglog;
  std::vector<double> y;
  for (const auto& p : curve.points) {
    const double rel_delta = p.perc_noise / 100.0;
    x_delta.push_back(std::log(rel_delta));
    x_loglog.push_back(std::log(-std::log(rel_delta)));
    y.push_back(std::log(p.rel_err));
  }
  curve.fits.push_back({FitAxis::loglog_delta, fit_line(x_delta, y)});
  curve.fits.push_back({FitAxis::log_vs_loglog, fit_line(x_loglog, y)});
  return curve;
}

RateCurve run_rate_study(int example_id, const RuleParams& rule,
                         const std::vector<double>& perc_levels, std::uint64_t seed,
                         const ExperimentConfig& config) {
  const Scenario scenario(example_problem(example_id), config);
  return run_rate_study(scenario, rule, perc_levels, seed, config.threads);
}

std::vector<double> default_rate_levels() { return {10.0, 5.0, 2.0, 1.0, 0.5, 0.2, 0.1}; }

}  // namespace mollify
