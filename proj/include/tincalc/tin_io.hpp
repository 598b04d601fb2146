#pragma once

#include <iosfwd>
#include <string>

#include "tincalc/geom.hpp"

namespace tincalc {

/// Reads the line-oriented TIN text format:
///
///   TIN 1
///   domain xmin ymin xmax ymax
///   vertices N
///   x y z            (N lines, decimal or p/q)
///   triangles M
///   i j k            (M lines, 0-based, counterclockwise)
///
/// Throws ParseError on malformed input. No geometric validation is done.
Tin parse_tin(std::istream& in);
Tin read_tin_file(const std::string& path);

/// Writes the same format; numbers are emitted as exact integers or p/q.
void emit_tin(std::ostream& out, const Tin& t);
void write_tin_file(const std::string& path, const Tin& t);

}  // namespace tincalc
