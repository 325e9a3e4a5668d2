#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mollify/csv.hpp"
#include "mollify/experiments.hpp"
#include "mollify/field_io.hpp"
#include "mollify/problems.hpp"

using namespace mollify;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mollify_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "mollify");
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(Cli, ForwardZeroInitialState) {
  write_field(path("zero.fld"), RealField(Grid2D(16, 2.0)));
  ASSERT_EQ(run({"forward", "--u0", path("zero.fld"), "--gamma", "0.1", "--out", path("o")}), 0)
      << err_.str();
  for (double v : read_field(path("o/g.fld")).values) EXPECT_EQ(v, 0.0);
  for (double v : read_field(path("o/g_delta.fld")).values) EXPECT_EQ(v, 0.0);
}

TEST_F(Cli, ForwardMatchesLibraryBitwise) {
  ASSERT_EQ(run({"forward", "--example", "1", "--out", path("o")}), 0) << err_.str();
  const RealField lib = make_exact_data(example_problem(1), Grid2D(256, 10.0));
  std::ostringstream expect;
  write_field(expect, lib);
  EXPECT_EQ(slurp(path("o/g.fld")), expect.str());
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"forward", "--n", "255", "--out", path("o")}), 1);
  EXPECT_EQ(run({"reconstruct", "--rule", "tikhonov", "--n", "32", "--out", path("o")}), 1);
  EXPECT_EQ(run({"rate-study", "--rule", "nope", "--n", "32", "--out", path("o")}), 1);
  EXPECT_EQ(run({"reconstruct", "--example", "7"}), 1);
  EXPECT_EQ(run({"reconstruct", "--bogus-flag", "1"}), 1);
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"reconstruct", "--rule", "fixed", "--n", "32", "--out", path("o")}), 1);
  EXPECT_EQ(run({"--help"}), 0);
}

TEST_F(Cli, MissingInputFile) {
  EXPECT_EQ(run({"reconstruct", "--u0", path("nope.fld"), "--gamma", "0.1", "--out", path("o")}), 1);
  EXPECT_NE(err_.str().find("nope.fld"), std::string::npos);
  EXPECT_EQ(run({"reconstruct", "--config", path("nope.cfg")}), 1);
}

TEST_F(Cli, ReconstructNoiseFreeTinyBeta) {
  ASSERT_EQ(run({"reconstruct", "--example", "1", "--noise-pct", "0", "--rule", "fixed", "--beta",
                 "1e-3", "--out", path("o")}),
            0)
      << err_.str();
  const auto rows = read_runs(path("o/run.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_LT(rows[0].rel_err, 1e-3);
  const RealField u = read_field(path("o/u_beta.fld"));
  const RealField u0 = make_initial(example_problem(1), u.grid);
  EXPECT_LT(l2_distance(u, u0) / l2_norm(u0), 1e-3);
}

TEST_F(Cli, ReconstructMorozovCertificate) {
  ASSERT_EQ(run({"reconstruct", "--example", "1", "--rule", "morozov", "--noise-pct", "1", "--seed",
                 "1", "--out", path("o")}),
            0)
      << err_.str();
  std::ifstream is(path("o/selection.csv"));
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header,
            "example,rule,delta,beta,residual,target,iterations,rejected_beta,rejected_residual\r");
  const auto f = split_csv_line(row);
  ASSERT_EQ(f.size(), 9u);
  EXPECT_EQ(f[1], "morozov");
  const double residual = std::stod(f[4]);
  const double target = std::stod(f[5]);
  EXPECT_LE(residual, target);
  EXPECT_GT(std::stod(f[8]), target);
  EXPECT_EQ(f[6], "198");
  EXPECT_DOUBLE_EQ(std::stod(f[3]), 0.18313147236278132);
  const auto rows = read_runs(path("o/run.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].rel_err, 0.083210506593010658);
}

TEST_F(Cli, ExitCodesForSelectionFailures) {
  EXPECT_EQ(run({"select-beta", "--rule", "morozov", "--noise-pct", "80", "--out", path("o")}), 2);
  EXPECT_EQ(run({"select-beta", "--rule", "morozov", "--q", "0.9999", "--out", path("o")}), 3);
}

TEST_F(Cli, IdenticalRunsIdenticalArtifacts) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run({"reconstruct", "--example", "2", "--n", "128", "--rule", "morozov", "--seed", "5",
                   "--out", path(sub)}),
              0);
  }
  for (const char* f : {"u_beta.fld", "run.csv", "selection.csv"}) {
    EXPECT_EQ(slurp(path(std::string("a/") + f)), slurp(path(std::string("b/") + f))) << f;
  }
}

TEST_F(Cli, ConfigPrecedence) {
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# flat key = value\nn = 64\nnoise_pct = 5\nrule = \"morozov\"\nexample = 3\n";
  }
  ASSERT_EQ(run({"select-beta", "--config", path("run.cfg"), "--out", path("a")}), 0) << err_.str();
  ASSERT_EQ(run({"select-beta", "--config", path("run.cfg"), "--noise-pct", "2", "--out", path("b")}),
            0);
  auto delta_of = [&](const std::string& p) {
    std::ifstream is(p);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    return std::stod(split_csv_line(line)[2]);
  };
  const RealField g = make_exact_data(example_problem(3), Grid2D(64, 10.0));
  EXPECT_NEAR(delta_of(path("a/selection.csv")), 0.05 * l2_norm(g), 1e-15);
  EXPECT_NEAR(delta_of(path("b/selection.csv")), 0.02 * l2_norm(g), 1e-15);
  {
    std::ofstream cfg(path("bad.cfg"));
    cfg << "n 64\n";
  }
  EXPECT_EQ(run({"select-beta", "--config", path("bad.cfg")}), 1);
}

TEST_F(Cli, MonteCarloSingleReplication) {
  ASSERT_EQ(run({"monte-carlo", "--example", "1", "--n", "64", "--n-reps", "1", "--levels", "10,5",
                 "--out", path("o")}),
            0)
      << err_.str();
  const auto rows = read_summaries(path("o/summary.csv"));
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.n_reps, 1);
    EXPECT_EQ(r.var_rel_err, 0.0);
  }
}

TEST_F(Cli, MonteCarloMatchesLibrary) {
  ASSERT_EQ(run({"monte-carlo", "--example", "1", "--n-reps", "200", "--levels", "1", "--seed",
                 "2024", "--threads", "0", "--out", path("o")}),
            0);
  const auto rows = read_summaries(path("o/summary.csv"));
  ASSERT_EQ(rows.size(), 1u);
  const MCSummary lib = run_monte_carlo(1, 1.0, RuleParams::apriori_defaults(1), 200, 2024);
  EXPECT_EQ(rows[0].mean_rel_err, lib.mean_rel_err);
  EXPECT_EQ(rows[0].var_rel_err, lib.var_rel_err);
  EXPECT_EQ(rows[0].mean_beta, lib.mean_beta);
}

TEST_F(Cli, RateStudyBothRules) {
  ASSERT_EQ(run({"rate-study", "--example", "2", "--n", "128", "--rule", "both", "--out", path("o")}),
            0)
      << err_.str();
  EXPECT_TRUE(fs::exists(path("o/rate.csv")));
  std::ifstream fit(path("o/rate_fit.csv"));
  std::string line;
  int rows = 0;
  std::getline(fit, line);
  while (std::getline(fit, line)) ++rows;
  EXPECT_EQ(rows, 4);  // two rules x two axes
}

TEST_F(Cli, ReconstructFromDataFile) {
  ASSERT_EQ(run({"forward", "--example", "1", "--n", "128", "--noise-pct", "1", "--out", path("f")}), 0);
  ASSERT_EQ(run({"reconstruct", "--data", path("f/g_delta.fld"), "--example", "1", "--rule", "morozov",
                 "--out", path("o")}),
            0)
      << err_.str();
  const auto rows = read_runs(path("o/run.csv"));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_GT(rows[0].rel_err, 0.0);
  EXPECT_LT(rows[0].rel_err, 0.2);
}
