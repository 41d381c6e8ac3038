#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nanopair/core/vec3.hpp"

namespace nanopair {

struct XyzFrame {
  long long step = 0;
  std::vector<Vec3> positions;
};

/// One XYZ frame: count line, "step <n>" comment, then `A x y z` rows with
/// 17 significant digits so positions parse back bit-exactly.
void write_xyz_frame(std::ostream& out, const std::vector<Vec3>& positions, long long step);

/// Appends (or, with `truncate`, starts) a frame in `path`. Throws
/// std::runtime_error on I/O failure.
void dump_xyz(const std::string& path, const std::vector<Vec3>& positions, long long step, bool truncate);

/// All frames of an XYZ stream. Throws ParseError on malformed input.
std::vector<XyzFrame> parse_xyz(std::istream& in);

}  // namespace nanopair
