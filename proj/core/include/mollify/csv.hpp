#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mollify/experiments.hpp"

namespace mollify {

// Fixed headers:
//   runs:    example,perc_noise,delta,rule,param,beta,rel_err,seed,wall_time_s
//   summary: example,perc_noise,rule,n_reps,mean_rel_err,var_rel_err,mean_beta
//   rate:    example,rule,delta,rel_err
//   fit:     example,rule,fit_axis,slope,intercept,r2
// Floats are written with 17 significant digits.

inline constexpr const char* kRunHeader =
    "example,perc_noise,delta,rule,param,beta,rel_err,seed,wall_time_s";
inline constexpr const char* kSummaryHeader =
    "example,perc_noise,rule,n_reps,mean_rel_err,var_rel_err,mean_beta";
inline constexpr const char* kRateHeader = "example,rule,delta,rel_err";
inline constexpr const char* kFitHeader = "example,rule,fit_axis,slope,intercept,r2";

std::string format_double(double v);

/// Splits one RFC-4180 record (quoted fields, doubled quotes).
std::vector<std::string> split_csv_line(const std::string& line);

void write_runs(std::ostream& os, const std::vector<RunRecord>& records);
void write_summaries(std::ostream& os, const std::vector<MCSummary>& summaries);
void write_rate_points(std::ostream& os, const std::vector<RateCurve>& curves);
void write_rate_fits(std::ostream& os, const std::vector<RateCurve>& curves);

/// File variants; IoError mentions the path on failure.
void emit_csv(const std::vector<RunRecord>& records, const std::string& path);
void emit_csv(const std::vector<MCSummary>& summaries, const std::string& path);
/// Writes the points to `path` and the fits to a sibling file whose name
/// has `_fit` inserted before the extension.
void emit_csv(const std::vector<RateCurve>& curves, const std::string& path);
std::string fit_path_for(const std::string& path);

std::vector<RunRecord> read_runs(std::istream& is);
std::vector<MCSummary> read_summaries(std::istream& is);
std::vector<RunRecord> read_runs(const std::string& path);
std::vector<MCSummary> read_summaries(const std::string& path);

}  // namespace mollify
