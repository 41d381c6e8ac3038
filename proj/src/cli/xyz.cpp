#include "nanopair/cli/xyz.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nanopair/core/errors.hpp"

namespace nanopair {

namespace {

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_xyz_frame(std::ostream& out, const std::vector<Vec3>& positions, long long step) {
  out << positions.size() << '\n' << "step " << step << '\n';
  for (const Vec3& p : positions) out << "A " << g17(p.x) << ' ' << g17(p.y) << ' ' << g17(p.z) << '\n';
}

void dump_xyz(const std::string& path, const std::vector<Vec3>& positions, long long step, bool truncate) {
  std::ofstream out(path, truncate ? std::ios::trunc : std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_xyz_frame(out, positions, step);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<XyzFrame> parse_xyz(std::istream& in) {
  std::vector<XyzFrame> frames;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    XyzFrame f;
    std::size_t count = 0;
    {
      std::istringstream ls(line);
      if (!(ls >> count)) throw ParseError(lineno, "count", "expected a particle count");
    }
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "comment", "missing comment line");
    ++lineno;
    {
      std::istringstream ls(line);
      std::string word;
      if (!(ls >> word >> f.step) || word != "step") throw ParseError(lineno, "comment", "expected 'step <n>'");
    }
    f.positions.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (!std::getline(in, line)) throw ParseError(lineno + 1, "atom", "frame ends early");
      ++lineno;
      const char* s = line.c_str();
      char* end = nullptr;
      while (*s == ' ') ++s;
      if (*s == '\0') throw ParseError(lineno, "atom", "empty row");
      while (*s && *s != ' ') ++s;  // element symbol
      Vec3 p;
      for (int d = 0; d < 3; ++d) {
        p[d] = std::strtod(s, &end);
        if (end == s) throw ParseError(lineno, "atom", "expected three coordinates");
        s = end;
      }
      f.positions.push_back(p);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace nanopair
