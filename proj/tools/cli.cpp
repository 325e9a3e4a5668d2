#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mollify/csv.hpp"
#include "mollify/diffusion.hpp"
#include "mollify/errors.hpp"
#include "mollify/experiments.hpp"
#include "mollify/field_io.hpp"
#include "mollify/fourier.hpp"
#include "mollify/noise.hpp"
#include "mollify/problems.hpp"
#include "mollify/regularizer.hpp"

namespace mollify::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string subcommand;
  std::optional<int> n;
  std::optional<double> l;
  std::optional<int> example;
  std::string u0_path;
  double tau = 1.0;
  std::string gamma_file;
  std::optional<double> gamma;
  double noise_pct = 1.0;
  std::uint64_t seed = 1;
  std::string rule = "apriori";
  std::optional<double> c;
  double s_exp = 2.0;
  double r = 1.0;
  double beta0 = 10.0;
  double q = 0.98;
  std::optional<double> beta;
  std::optional<double> trunc_radius;
  std::string out = ".";
  int threads = 1;
  int n_reps = 200;
  std::vector<double> levels;
  std::string data_path;
  std::optional<double> delta;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat `key = value` lines; '#' starts a comment. Keys are flag names
// without the leading dashes ('_' and '-' are interchangeable).
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key.empty() || key == "config") {
      throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key");
    }
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

void add_options(CLI::App& app, CliConfig& cfg) {
  app.add_option("--example", cfg.example, "Built-in problem 1..4")->check(CLI::Range(1, 4));
  app.add_option("--n", cfg.n, "Grid points per axis (even)");
  app.add_option("--l", cfg.l, "Half-width L of the box [-L, L]^2");
  app.add_option("--u0", cfg.u0_path, "Custom initial state (FLD1)");
  app.add_option("--tau", cfg.tau, "Fractional order in (0, 1] for custom problems");
  app.add_option("--gamma-file", cfg.gamma_file, "Conductivity samples, CSV with header t,gamma");
  app.add_option("--gamma", cfg.gamma, "Constant conductivity for custom problems");
  app.add_option("--noise-pct", cfg.noise_pct, "Noise level in percent of ||g||");
  app.add_option("--seed", cfg.seed, "Noise seed");
  app.add_option("--rule", cfg.rule, "apriori | morozov | fixed (rate-study, monte-carlo: also both)");
  app.add_option("--c", cfg.c, "A-priori constant c");
  app.add_option("--s-exp", cfg.s_exp, "A-priori exponent s");
  app.add_option("--r", cfg.r, "Discrepancy exponent r");
  app.add_option("--beta0", cfg.beta0, "Discrepancy initial beta");
  app.add_option("--q", cfg.q, "Discrepancy reduction factor");
  app.add_option("--beta", cfg.beta, "Regularisation parameter for --rule fixed");
  app.add_option("--trunc-radius", cfg.trunc_radius, "Truncate the operator to |xi| <= R");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--threads", cfg.threads, "Worker cap, 0 = auto")->check(CLI::NonNegativeNumber);
  app.add_option("--n-reps", cfg.n_reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  app.add_option("--levels", cfg.levels, "Noise levels in percent, comma separated")
      ->delimiter(',');
  app.add_option("--data", cfg.data_path, "Noisy data (FLD1) to reconstruct from");
  app.add_option("--delta", cfg.delta,
                 "Absolute noise level of --data (default: --noise-pct of its norm)");
}

ProblemSpec resolve_problem(const CliConfig& cfg, std::optional<Grid2D>& file_grid) {
  if (!cfg.u0_path.empty()) {
    if (cfg.example) throw UsageError("--example and --u0 are mutually exclusive");
    std::optional<Conductivity> cond;
    if (!cfg.gamma_file.empty() && cfg.gamma) {
      throw UsageError("--gamma and --gamma-file are mutually exclusive");
    }
    if (!cfg.gamma_file.empty()) cond = Conductivity::from_csv(cfg.gamma_file);
    if (cfg.gamma) cond = Conductivity::constant(*cfg.gamma);
    if (!cond) throw UsageError("a custom problem needs --gamma or --gamma-file");
    RealField u0 = read_field(cfg.u0_path);
    file_grid = u0.grid;
    return custom_problem(std::move(u0), cfg.tau, *cond);
  }
  return example_problem(cfg.example.value_or(1));
}

ExperimentConfig resolve_grid(const CliConfig& cfg, const std::optional<Grid2D>& file_grid) {
  ExperimentConfig ec;
  if (file_grid) {
    if (cfg.n && *cfg.n != file_grid->n()) throw UsageError("--n does not match the --u0 grid");
    if (cfg.l && *cfg.l != file_grid->half_width()) {
      throw UsageError("--l does not match the --u0 grid");
    }
    ec.n = file_grid->n();
    ec.half_width = file_grid->half_width();
  } else {
    ec.n = cfg.n.value_or(256);
    ec.half_width = cfg.l.value_or(10.0);
  }
  if (ec.n < 2 || ec.n % 2 != 0) throw UsageError("--n must be an even integer >= 2");
  if (!(ec.half_width > 0.0)) throw UsageError("--l must be positive");
  if (cfg.trunc_radius) {
    if (!(*cfg.trunc_radius > 0.0)) throw UsageError("--trunc-radius must be positive");
    ec.trunc_radius = *cfg.trunc_radius;
  }
  ec.threads = cfg.threads;
  return ec;
}

RuleParams rule_params(const CliConfig& cfg, Rule rule, int example_id) {
  RuleParams p;
  switch (rule) {
    case Rule::apriori:
      p = RuleParams::apriori_defaults(example_id);
      if (cfg.c) p.c = *cfg.c;
      p.s = cfg.s_exp;
      break;
    case Rule::morozov:
      p = RuleParams::morozov_defaults();
      p.morozov.r = cfg.r;
      p.morozov.beta0 = cfg.beta0;
      p.morozov.q = cfg.q;
      break;
    case Rule::fixed:
      if (!cfg.beta) throw UsageError("--rule fixed needs --beta");
      p.rule = Rule::fixed;
      p.beta = *cfg.beta;
      break;
  }
  return p;
}

std::vector<Rule> parse_rules(const std::string& name, bool allow_both) {
  if (allow_both && name == "both") return {Rule::apriori, Rule::morozov};
  try {
    return {rule_from_string(name)};
  } catch (const DomainError&) {
    throw UsageError("unknown rule: " + name);
  }
}

std::string out_path(const CliConfig& cfg, const std::string& name) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out + ": " + ec.message());
  return (fs::path(cfg.out) / name).string();
}

constexpr const char* kSelectionHeader =
    "example,rule,delta,beta,residual,target,iterations,rejected_beta,rejected_residual";

void write_selection(const std::string& path, int example_id, Rule rule, double delta,
                     double beta, const std::optional<SelectionResult>& sel) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << kSelectionHeader << "\r\n";
  const SelectionResult s = sel.value_or(SelectionResult{});
  os << example_id << ',' << to_string(rule) << ',' << format_double(delta) << ','
     << format_double(beta) << ',' << format_double(s.residual) << ','
     << format_double(s.target) << ',' << s.iterations << ',' << format_double(s.rejected_beta)
     << ',' << format_double(s.rejected_residual) << "\r\n";
  if (!os) throw IoError("write failed: " + path);
}

int cmd_forward(const CliConfig& cfg, std::ostream& out) {
  std::optional<Grid2D> file_grid;
  const ProblemSpec problem = resolve_problem(cfg, file_grid);
  const ExperimentConfig ec = resolve_grid(cfg, file_grid);
  const Grid2D grid(ec.n, ec.half_width);
  const RealField g = make_exact_data(problem, grid);
  const std::string g_path = out_path(cfg, "g.fld");
  write_field(g_path, g);
  out << "wrote " << g_path << "\n";
  if (cfg.noise_pct > 0.0) {
    const NoisyData noisy = add_noise(g, NoiseSpec{cfg.noise_pct, cfg.seed});
    const std::string gd_path = out_path(cfg, "g_delta.fld");
    write_field(gd_path, noisy.g_delta);
    out << "wrote " << gd_path << " (delta = " << format_double(noisy.delta) << ")\n";
  }
  return kOk;
}

// Reconstruction from user-supplied noisy data; u0 (if given) is only a
// reference for rel_err.
RunRecord reconstruct_from_data(const CliConfig& cfg, Rule rule, RealField* u_out) {
  const RealField data = read_field(cfg.data_path);
  std::optional<Conductivity> cond;
  if (!cfg.gamma_file.empty()) cond = Conductivity::from_csv(cfg.gamma_file);
  if (cfg.gamma) cond = Conductivity::constant(*cfg.gamma);
  int id = 0;
  double tau = cfg.tau;
  if (cfg.example) {
    const ProblemSpec p = example_problem(*cfg.example);
    id = p.id;
    tau = p.tau;
    if (!cond) cond = p.conductivity;
  }
  if (!cond) throw UsageError("--data needs --example, --gamma or --gamma-file");
  DiffusionSymbol sym = build_symbol(tau, integrate_conductivity(*cond));
  if (cfg.trunc_radius) sym = truncated_operator(sym, *cfg.trunc_radius).first;
  const FilterSpec spec(data.grid, sym, MollifierSymbol::gaussian());

  const double delta = cfg.delta ? *cfg.delta : cfg.noise_pct * l2_norm(data) / 100.0;
  const RuleParams params = rule_params(cfg, rule, id);
  const SpectralField g_hat = forward_ft(data);

  RunRecord rec;
  rec.example_id = id;
  rec.perc_noise = cfg.noise_pct;
  rec.delta = delta;
  rec.rule = rule;
  rec.param = params.param();
  rec.seed = cfg.seed;
  switch (rule) {
    case Rule::apriori: rec.beta = select_beta_apriori(delta, params.c, params.s).beta; break;
    case Rule::morozov:
      rec.selection = select_beta_morozov(DiscrepancyEvaluator(spec, g_hat), delta, params.morozov);
      rec.beta = rec.selection->beta;
      break;
    case Rule::fixed: rec.beta = params.beta; break;
  }
  RealField u = inverse_ft(reconstruct_spectrum(spec, rec.beta, g_hat));
  rec.rel_err = std::numeric_limits<double>::quiet_NaN();
  if (!cfg.u0_path.empty()) {
    const RealField ref = read_field(cfg.u0_path);
    rec.rel_err = l2_distance(u, ref) / l2_norm(ref);
  } else if (cfg.example) {
    const RealField ref = make_initial(example_problem(*cfg.example), data.grid);
    rec.rel_err = l2_distance(u, ref) / l2_norm(ref);
  }
  if (u_out != nullptr) *u_out = std::move(u);
  return rec;
}

RunRecord reconstruct_run(const CliConfig& cfg, RealField* u_out) {
  const Rule rule = parse_rules(cfg.rule, false).front();
  if (!cfg.data_path.empty()) return reconstruct_from_data(cfg, rule, u_out);
  std::optional<Grid2D> file_grid;
  ProblemSpec problem = resolve_problem(cfg, file_grid);
  const ExperimentConfig ec = resolve_grid(cfg, file_grid);
  const RuleParams params = rule_params(cfg, rule, problem.id);
  const Scenario scenario(std::move(problem), ec);
  const NoisyData noisy = add_noise(scenario.exact_data(), NoiseSpec{cfg.noise_pct, cfg.seed});
  return scenario.run_on_data(noisy.g_delta, noisy.delta, cfg.noise_pct, params, cfg.seed, u_out);
}

void print_record(std::ostream& out, const RunRecord& rec) {
  out << "rule=" << to_string(rec.rule) << " delta=" << format_double(rec.delta)
      << " beta=" << format_double(rec.beta) << " rel_err=" << format_double(rec.rel_err) << "\n";
  if (rec.selection) {
    out << "certificate: residual=" << format_double(rec.selection->residual)
        << " target=" << format_double(rec.selection->target)
        << " rejected_beta=" << format_double(rec.selection->rejected_beta)
        << " rejected_residual=" << format_double(rec.selection->rejected_residual)
        << " iterations=" << rec.selection->iterations << "\n";
  }
}

int cmd_reconstruct(const CliConfig& cfg, std::ostream& out) {
  RealField u{Grid2D(2, 1.0)};
  RunRecord rec = reconstruct_run(cfg, &u);
  // Artifacts must be identical across identical invocations.
  rec.wall_time_s = 0.0;
  write_field(out_path(cfg, "u_beta.fld"), u);
  emit_csv(std::vector<RunRecord>{rec}, out_path(cfg, "run.csv"));
  write_selection(out_path(cfg, "selection.csv"), rec.example_id, rec.rule, rec.delta, rec.beta,
                  rec.selection);
  print_record(out, rec);
  return kOk;
}

int cmd_select_beta(const CliConfig& cfg, std::ostream& out) {
  const RunRecord rec = reconstruct_run(cfg, nullptr);
  write_selection(out_path(cfg, "selection.csv"), rec.example_id, rec.rule, rec.delta, rec.beta,
                  rec.selection);
  print_record(out, rec);
  return kOk;
}

std::vector<double> levels_or(const CliConfig& cfg, std::vector<double> fallback) {
  return cfg.levels.empty() ? fallback : cfg.levels;
}

int cmd_rate_study(const CliConfig& cfg, std::ostream& out) {
  const std::vector<Rule> rules = parse_rules(cfg.rule, true);
  std::optional<Grid2D> file_grid;
  ProblemSpec problem = resolve_problem(cfg, file_grid);
  const ExperimentConfig ec = resolve_grid(cfg, file_grid);
  const int id = problem.id;
  const Scenario scenario(std::move(problem), ec);
  const std::vector<double> levels = levels_or(cfg, default_rate_levels());
  std::vector<RateCurve> curves;
  for (Rule rule : rules) {
    curves.push_back(run_rate_study(scenario, rule_params(cfg, rule, id), levels, cfg.seed,
                                    ec.threads));
  }
  const std::string path = out_path(cfg, "rate.csv");
  emit_csv(curves, path);
  for (const auto& c : curves) {
    out << to_string(c.rule) << ": " << to_string(c.fit_axis)
        << " slope=" << format_double(c.fitted_slope())
        << " r2=" << format_double(c.fit(c.fit_axis).r2) << "\n";
  }
  out << "wrote " << path << " and " << fit_path_for(path) << "\n";
  return kOk;
}

int cmd_monte_carlo(const CliConfig& cfg, std::ostream& out) {
  const std::vector<Rule> rules = parse_rules(cfg.rule, true);
  std::optional<Grid2D> file_grid;
  ProblemSpec problem = resolve_problem(cfg, file_grid);
  const ExperimentConfig ec = resolve_grid(cfg, file_grid);
  const int id = problem.id;
  const Scenario scenario(std::move(problem), ec);
  const std::vector<double> levels = levels_or(cfg, {20.0, 10.0, 5.0, 2.0, 1.0});
  std::vector<MCSummary> rows;
  for (Rule rule : rules) {
    const RuleParams params = rule_params(cfg, rule, id);
    for (double perc : levels) {
      rows.push_back(run_monte_carlo(scenario, perc, params, cfg.n_reps, cfg.seed, ec.threads));
      const MCSummary& s = rows.back();
      out << to_string(rule) << " " << format_double(perc)
          << "%: mean_rel_err=" << format_double(s.mean_rel_err)
          << " mean_beta=" << format_double(s.mean_beta) << "\n";
    }
  }
  const std::string path = out_path(cfg, "summary.csv");
  emit_csv(rows, path);
  out << "wrote " << path << "\n";
  return kOk;
}

// The subcommand is the first argument that does not start with '-'
// (option values never appear before it).
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::optional<std::string> config;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      config = args[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config = a.substr(9);
    } else {
      rest.push_back(a);
    }
  }
  if (!config) return rest;
  std::size_t sub = 1;
  while (sub < rest.size() && !rest[sub].empty() && rest[sub][0] == '-') ++sub;
  if (sub >= rest.size()) throw UsageError("missing subcommand");
  std::vector<std::string> merged(rest.begin(), rest.begin() + static_cast<long>(sub) + 1);
  for (auto& a : config_args(*config)) merged.push_back(std::move(a));
  merged.insert(merged.end(), rest.begin() + static_cast<long>(sub) + 1, rest.end());
  return merged;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Spectral mollification for backward diffusion problems", "mollify"};
  app.require_subcommand(1);
  // Repeated flags keep the last value, so config-file entries (inserted
  // first) lose to explicit flags.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"forward", "Write exact (and noisy) final data g"},
      {"reconstruct", "Select beta and reconstruct u0 from noisy data"},
      {"select-beta", "Run the parameter selection rule only"},
      {"rate-study", "Error versus noise level with fitted rates"},
      {"monte-carlo", "Replicated runs summarised per noise level"},
  };
  for (const auto& [name, help] : subs) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_options(*sub, cfg);
    sub->callback([&cfg, name = name] { cfg.subcommand = name; });
  }

  try {
    std::vector<std::string> args = expand_config(args_in);
    if (args.empty()) args.push_back("mollify");
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "mollify: " << e.what() << "\n";
      return kUsage;
    }
    if (cfg.subcommand == "forward") return cmd_forward(cfg, out);
    if (cfg.subcommand == "reconstruct") return cmd_reconstruct(cfg, out);
    if (cfg.subcommand == "select-beta") return cmd_select_beta(cfg, out);
    if (cfg.subcommand == "rate-study") return cmd_rate_study(cfg, out);
    if (cfg.subcommand == "monte-carlo") return cmd_monte_carlo(cfg, out);
    err << "mollify: no subcommand\n";
    return kUsage;
  } catch (const NoiseDominatedError& e) {
    err << "mollify: noise-dominated data: " << e.what() << "\n";
    return kNoiseDominated;
  } catch (const NonConvergenceError& e) {
    err << "mollify: no convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "mollify: " << e.what() << "\n";
    return kUsage;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace mollify::cli
