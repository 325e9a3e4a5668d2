#include "mollify/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mollify/errors.hpp"

namespace mollify {
namespace {

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_field(std::ostream& os, const RealField& f) {
  const int n = f.grid.n();
  os << "FLD1 " << n << ' ' << format17(f.grid.half_width()) << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) os << ' ';
      os << format17(f(i, j));
    }
    os << '\n';
  }
  if (!os) throw IoError("write_field: stream error");
}

void write_field(const std::string& path, const RealField& f) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_field(os, f);
  os.close();
  if (!os) throw IoError("error writing '" + path + "'");
}

RealField read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("FLD1: empty input");
  std::istringstream header(line);
  std::string magic;
  int n = 0;
  double half_width = 0.0;
  if (!(header >> magic >> n >> half_width) || magic != "FLD1") {
    throw IoError("FLD1: malformed header '" + line + "'");
  }
  std::string extra;
  if (header >> extra) throw IoError("FLD1: trailing tokens in header");
  if (n <= 0 || n % 2 != 0 || !(half_width > 0.0)) {
    throw IoError("FLD1: invalid grid in header '" + line + "'");
  }

  RealField f{Grid2D(n, half_width)};
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) {
      throw IoError("FLD1: expected " + std::to_string(n) + " rows, got " + std::to_string(i));
    }
    std::istringstream row(line);
    int j = 0;
    std::string token;
    while (row >> token) {
      if (j >= n) throw IoError("FLD1: row " + std::to_string(i + 1) + " has more than N values");
      try {
        std::size_t used = 0;
        f(i, j) = std::stod(token, &used);
        if (used != token.size() || !std::isfinite(f(i, j))) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw IoError("FLD1: bad number '" + token + "' in row " + std::to_string(i + 1));
      }
      ++j;
    }
    if (j != n) {
      throw IoError("FLD1: row " + std::to_string(i + 1) + " has " + std::to_string(j) +
                    " values, expected " + std::to_string(n));
    }
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw IoError("FLD1: more than N rows");
    }
  }
  return f;
}

RealField read_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  try {
    return read_field(is);
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace mollify
