#pragma once

#include <iosfwd>
#include <string>

#include "ustc/constellation.hpp"

namespace ustc {

// Constellation file format (plain text):
//
//   format special|general
//   T <int>
//   M <int>
//   L <int>
//   matrix <index>
//   <re> <im> <re> <im> ...     (one line per row, cols [re, im] pairs)
//   ...
//
// Writing uses 17 significant digits so round-trips are bit-exact.
// Reading validates shapes and the unitary/frame condition and reports the
// offending field or element index.

void write_constellation(std::ostream& os, const Constellation& c);
void write_constellation_file(const std::string& path, const Constellation& c);

Constellation read_constellation(std::istream& is);
Constellation read_constellation_file(const std::string& path);

} // namespace ustc
