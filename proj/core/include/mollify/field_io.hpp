#pragma once

#include <iosfwd>
#include <string>

#include "mollify/grid.hpp"

namespace mollify {

// FLD1 text format:
//   FLD1 <N> <L>
//   N lines of N space-separated decimals, row-major (row index over x1).
// Values are written with 17 significant digits so a round trip is exact.

void write_field(std::ostream& os, const RealField& f);
void write_field(const std::string& path, const RealField& f);

/// Throws IoError on malformed headers, short or long rows, or a
/// dimension mismatch between the header and the data.
RealField read_field(std::istream& is);
RealField read_field(const std::string& path);

}  // namespace mollify
