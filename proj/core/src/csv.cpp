#include "mollify/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "mollify/errors.hpp"

namespace mollify {
namespace {

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.close();
  if (!os) throw IoError("error writing '" + path + "'");
}

std::vector<std::vector<std::string>> read_rows(std::istream& is, const char* header) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw IoError("csv: unexpected header '" + line + "'");
  const std::size_t width = split_csv_line(header).size();
  std::vector<std::vector<std::string>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != width) {
      throw IoError("csv: row has " + std::to_string(cells.size()) + " fields, expected " +
                    std::to_string(width));
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw IoError("csv: bad number '" + s + "'");
}

template <typename T>
std::vector<T> read_file(const std::string& path, std::vector<T> (*reader)(std::istream&)) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "'");
  try {
    return reader(is);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& raw) {
  const std::string line =
      !raw.empty() && raw.back() == '\r' ? raw.substr(0, raw.size() - 1) : raw;
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw IoError("csv: unterminated quoted field");
  out.push_back(std::move(cur));
  return out;
}

void write_runs(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kRunHeader << "\r\n";
  for (const auto& r : records) {
    os << r.example_id << ',' << format_double(r.perc_noise) << ',' << format_double(r.delta)
       << ',' << field(to_string(r.rule)) << ',' << format_double(r.param) << ','
       << format_double(r.beta) << ',' << format_double(r.rel_err) << ',' << r.seed << ','
       << format_double(r.wall_time_s) << "\r\n";
  }
}

void write_summaries(std::ostream& os, const std::vector<MCSummary>& summaries) {
  os << kSummaryHeader << "\r\n";
  for (const auto& s : summaries) {
    os << s.example_id << ',' << format_double(s.perc_noise) << ',' << field(to_string(s.rule))
       << ',' << s.n_reps << ',' << format_double(s.mean_rel_err) << ','
       << format_double(s.var_rel_err) << ',' << format_double(s.mean_beta) << "\r\n";
  }
}

void write_rate_points(std::ostream& os, const std::vector<RateCurve>& curves) {
  os << kRateHeader << "\r\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      os << c.example_id << ',' << field(to_string(c.rule)) << ',' << format_double(p.delta)
         << ',' << format_double(p.rel_err) << "\r\n";
    }
  }
}

void write_rate_fits(std::ostream& os, const std::vector<RateCurve>& curves) {
  os << kFitHeader << "\r\n";
  for (const auto& c : curves) {
    for (const auto& f : c.fits) {
      os << c.example_id << ',' << field(to_string(c.rule)) << ',' << field(to_string(f.axis))
         << ',' << format_double(f.line.slope) << ',' << format_double(f.line.intercept) << ','
         << format_double(f.line.r2) << "\r\n";
    }
  }
}

void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  auto os = open_out(path);
  write_runs(os, records);
  finish(os, path);
}

void emit_csv(const std::vector<MCSummary>& summaries, const std::string& path) {
  auto os = open_out(path);
  write_summaries(os, summaries);
  finish(os, path);
}

std::string fit_path_for(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_fit";
  }
  return path.substr(0, dot) + "_fit" + path.substr(dot);
}

void emit_csv(const std::vector<RateCurve>& curves, const std::string& path) {
  auto os = open_out(path);
  write_rate_points(os, curves);
  finish(os, path);
  const std::string fit_path = fit_path_for(path);
  auto fit = open_out(fit_path);
  write_rate_fits(fit, curves);
  finish(fit, fit_path);
}

std::vector<RunRecord> read_runs(std::istream& is) {
  std::vector<RunRecord> out;
  for (const auto& row : read_rows(is, kRunHeader)) {
    RunRecord r;
    r.example_id = static_cast<int>(to_double(row[0]));
    r.perc_noise = to_double(row[1]);
    r.delta = to_double(row[2]);
    r.rule = rule_from_string(row[3]);
    r.param = to_double(row[4]);
    r.beta = to_double(row[5]);
    r.rel_err = to_double(row[6]);
    try {
      r.seed = std::stoull(row[7]);
    } catch (const std::exception&) {
      throw IoError("csv: bad seed '" + row[7] + "'");
    }
    r.wall_time_s = to_double(row[8]);
    out.push_back(r);
  }
  return out;
}

std::vector<MCSummary> read_summaries(std::istream& is) {
  std::vector<MCSummary> out;
  for (const auto& row : read_rows(is, kSummaryHeader)) {
    MCSummary s;
    s.example_id = static_cast<int>(to_double(row[0]));
    s.perc_noise = to_double(row[1]);
    s.rule = rule_from_string(row[2]);
    s.n_reps = static_cast<int>(to_double(row[3]));
    s.mean_rel_err = to_double(row[4]);
    s.var_rel_err = to_double(row[5]);
    s.mean_beta = to_double(row[6]);
    out.push_back(s);
  }
  return out;
}

std::vector<RunRecord> read_runs(const std::string& path) {
  return read_file<RunRecord>(path, &read_runs);
}

std::vector<MCSummary> read_summaries(const std::string& path) {
  return read_file<MCSummary>(path, &read_summaries);
}

}  // namespace mollify
