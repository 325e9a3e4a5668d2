#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mollify/csv.hpp"
#include "mollify/errors.hpp"
#include "mollify/field_io.hpp"
#include "oracles.hpp"

using namespace mollify;

namespace {

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mollify_io_" + name);
}

RealField parse(const std::string& text) {
  std::istringstream is(text);
  return read_field(is);
}

}  // namespace

TEST(FieldIo, RoundTripIsExact) {
  const RealField f = oracle::white_noise(Grid2D(16, 2.5), 3);
  std::stringstream ss;
  write_field(ss, f);
  const RealField back = read_field(ss);
  EXPECT_EQ(back.grid, f.grid);
  EXPECT_EQ(back.values, f.values);

  const auto path = tmp("rt.fld");
  write_field(path.string(), f);
  EXPECT_EQ(read_field(path.string()).values, f.values);
  std::filesystem::remove(path);
}

TEST(FieldIo, Header) {
  std::stringstream ss;
  write_field(ss, RealField(Grid2D(2, 1.5)));
  std::string first;
  std::getline(ss, first);
  EXPECT_EQ(first, "FLD1 2 1.5");
}

TEST(FieldIo, RejectsMalformedInput) {
  EXPECT_THROW(parse(""), IoError);
  EXPECT_THROW(parse("FLD2 2 1\n0 0\n0 0\n"), IoError);
  EXPECT_THROW(parse("FLD1 3 1\n0 0 0\n0 0 0\n0 0 0\n"), IoError);  // odd N
  EXPECT_THROW(parse("FLD1 2 -1\n0 0\n0 0\n"), IoError);
  EXPECT_THROW(parse("FLD1 2 1\n0 0\n0\n"), IoError);              // short row
  EXPECT_THROW(parse("FLD1 2 1\n0 0 0\n0 0\n"), IoError);          // long row
  EXPECT_THROW(parse("FLD1 2 1\n0 0\n"), IoError);                 // missing row
  EXPECT_THROW(parse("FLD1 2 1\n0 0\n0 0\n0 0\n"), IoError);       // extra row
  EXPECT_THROW(parse("FLD1 2 1\n0 x\n0 0\n"), IoError);
  EXPECT_THROW(parse("FLD1 2 1\n0 nan\n0 0\n"), IoError);
  EXPECT_NO_THROW(parse("FLD1 2 1\n0 1e-3\n-2 0.5\n"));
  EXPECT_THROW(read_field(tmp("does_not_exist.fld").string()), IoError);
}

TEST(Csv, SplitLine) {
  using V = std::vector<std::string>;
  EXPECT_EQ(split_csv_line("a,b,,c"), (V{"a", "b", "", "c"}));
  EXPECT_EQ(split_csv_line("\"x,y\",\"say \"\"hi\"\"\""), (V{"x,y", "say \"hi\""}));
  EXPECT_EQ(split_csv_line("1,2\r"), (V{"1", "2"}));
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_double(2.0), "2");
}

TEST(Csv, EmptyListsGiveHeaderOnly) {
  std::ostringstream runs;
  write_runs(runs, {});
  EXPECT_EQ(runs.str(), std::string(kRunHeader) + "\r\n");
  std::ostringstream sums;
  write_summaries(sums, {});
  EXPECT_EQ(sums.str(), std::string(kSummaryHeader) + "\r\n");
  std::ostringstream rate;
  write_rate_points(rate, {});
  EXPECT_EQ(rate.str(), std::string(kRateHeader) + "\r\n");
  std::ostringstream fit;
  write_rate_fits(fit, {});
  EXPECT_EQ(fit.str(), std::string(kFitHeader) + "\r\n");
}

TEST(Csv, RunRoundTrip) {
  RunRecord a;
  a.example_id = 2;
  a.perc_noise = 5.0;
  a.delta = 0.1 / 3.0;
  a.rule = Rule::morozov;
  a.param = 1.0;
  a.beta = std::exp(-1.7);
  a.rel_err = 0.0123456789012345678;
  a.seed = 18446744073709551615ull;
  a.wall_time_s = 0.25;
  RunRecord b = a;
  b.rule = Rule::apriori;
  b.seed = 0;
  b.param = 0.2;

  std::stringstream ss;
  write_runs(ss, {a, b});
  const auto back = read_runs(ss);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const RunRecord& x = i == 0 ? a : b;
    EXPECT_EQ(back[i].example_id, x.example_id);
    EXPECT_EQ(back[i].perc_noise, x.perc_noise);
    EXPECT_EQ(back[i].delta, x.delta);
    EXPECT_EQ(back[i].rule, x.rule);
    EXPECT_EQ(back[i].param, x.param);
    EXPECT_EQ(back[i].beta, x.beta);
    EXPECT_EQ(back[i].rel_err, x.rel_err);
    EXPECT_EQ(back[i].seed, x.seed);
    EXPECT_EQ(back[i].wall_time_s, x.wall_time_s);
  }
}

TEST(Csv, SummaryRoundTripThroughFile) {
  MCSummary s;
  s.example_id = 3;
  s.perc_noise = 0.5;
  s.rule = Rule::apriori;
  s.n_reps = 200;
  s.mean_rel_err = 0.16;
  s.var_rel_err = 1.0 / 7.0 * 1e-6;
  s.mean_beta = 0.07;
  const auto path = tmp("summary.csv");
  emit_csv(std::vector<MCSummary>{s, s}, path.string());
  const auto back = read_summaries(path.string());
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].var_rel_err, s.var_rel_err);
  EXPECT_EQ(back[1].n_reps, 200);
  EXPECT_EQ(back[1].rule, Rule::apriori);
  std::filesystem::remove(path);
  EXPECT_THROW(emit_csv(std::vector<MCSummary>{}, "/nonexistent-dir/x.csv"), IoError);
}

TEST(Csv, RateFilesAreSeparate) {
  RateCurve c;
  c.example_id = 1;
  c.rule = Rule::apriori;
  c.fit_axis = FitAxis::loglog_delta;
  c.points = {{10, 0.1, 0.05, 0.1}, {5, 0.05, 0.03, 0.08}, {1, 0.01, 0.01, 0.05}};
  c.fits = {{FitAxis::loglog_delta, {0.5, -1.0, 0.99}}, {FitAxis::log_vs_loglog, {-1.2, 0.1, 0.9}}};
  const auto path = tmp("rate.csv");
  emit_csv(std::vector<RateCurve>{c}, path.string());
  EXPECT_EQ(fit_path_for(path.string()), tmp("rate_fit.csv").string());
  EXPECT_EQ(fit_path_for("out/points"), "out/points_fit");
  std::ifstream pts(path);
  std::string line;
  int rows = 0;
  std::getline(pts, line);
  EXPECT_EQ(line, std::string(kRateHeader) + "\r");
  while (std::getline(pts, line)) ++rows;
  EXPECT_EQ(rows, 3);
  std::ifstream fit(fit_path_for(path.string()));
  std::getline(fit, line);
  EXPECT_EQ(line, std::string(kFitHeader) + "\r");
  std::getline(fit, line);
  EXPECT_EQ(split_csv_line(line)[2], "loglog_delta");
  std::filesystem::remove(path);
  std::filesystem::remove(fit_path_for(path.string()));
}
