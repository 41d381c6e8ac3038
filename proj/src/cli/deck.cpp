#include "nanopair/cli/deck.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "nanopair/core/errors.hpp"

namespace nanopair {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value, int line) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last || value.empty())
    throw ParseError(line, key, "cannot parse '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw ParseError(line, key, "expected a boolean, got '" + value + "'");
}

std::array<int, 3> parse_grid(const std::string& key, const std::string& value, int line) {
  std::array<int, 3> g{};
  std::size_t pos = 0;
  for (int d = 0; d < 3; ++d) {
    const std::size_t next = d < 2 ? value.find('x', pos) : value.size();
    if (next == std::string::npos) throw ParseError(line, key, "expected XxYxZ, got '" + value + "'");
    g[d] = parse_number<int>(key, value.substr(pos, next - pos), line);
    pos = next + 1;
  }
  return g;
}

}  // namespace

LayoutChoice parse_layout(const std::string& text) {
  if (text == "aos") return {LayoutKind::AoS, 8};
  if (text == "soa") return {LayoutKind::SoA, 8};
  if (text.rfind("aosoa", 0) == 0) {
    if (text == "aosoa") return {LayoutKind::AoSoA, 8};
    if (text.size() > 6 && text[5] == ':') {
      int c = 0;
      const auto res = std::from_chars(text.data() + 6, text.data() + text.size(), c);
      if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) return {LayoutKind::AoSoA, c};
    }
  }
  throw ConfigError("layout", "expected aos, soa or aosoa:<c>, got '" + text + "'");
}

InputDeck preset(std::string_view name) {
  InputDeck d;
  if (name == "lj-32") {
    d.sim.unit_cells = {32, 32, 32};
    d.sim.particles_per_cell = 4;
    d.sim.steps = 100;
    d.sim.dt = 0.005;
    d.sim.cutoff = 2.5;
    d.sim.verlet_buffer = 0.3;
    d.sim.reneigh_interval = 20;
    d.sim.epsilon = 1.0;
    d.sim.sigma = 1.0;
    return d;
  }
  if (name == "sd-halfdomain") {
    d.sim.unit_cells = {16, 16, 16};
    d.sim.potential = PotentialKind::SpringDashpot;
    d.sim.stiffness = 0.0;
    d.sim.damping = 0.0;
    d.sim.diameter = 1.0;
    d.sim.cutoff = 1.0;
    d.sim.verlet_buffer = 0.3;
    d.sim.steps = 1000;
    d.sim.velocity_scale = 0.0;
    d.sim.fill = FillKind::DiagonalHalf;
    return d;
  }
  throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
}

void apply_setting(InputDeck& deck, const std::string& key, const std::string& value, int line) {
  SimConfig& s = deck.sim;
  RunOptions& r = deck.run;
  auto num = [&]<class T>(T& dst) { dst = parse_number<T>(key, value, line); };

  if (key == "nx") num(s.unit_cells[0]);
  else if (key == "ny") num(s.unit_cells[1]);
  else if (key == "nz") num(s.unit_cells[2]);
  else if (key == "particles_per_cell") num(s.particles_per_cell);
  else if (key == "density") num(s.lattice_density);
  else if (key == "dt") num(s.dt);
  else if (key == "steps") num(s.steps);
  else if (key == "cutoff") num(s.cutoff);
  else if (key == "buffer") num(s.verlet_buffer);
  else if (key == "reneigh_every") num(s.reneigh_interval);
  else if (key == "epsilon") num(s.epsilon);
  else if (key == "sigma") num(s.sigma);
  else if (key == "stiffness") num(s.stiffness);
  else if (key == "damping") num(s.damping);
  else if (key == "diameter") num(s.diameter);
  else if (key == "mass") num(s.mass);
  else if (key == "seed") num(s.rng_seed);
  else if (key == "velocity_scale") num(s.velocity_scale);
  else if (key == "half_neigh") s.half_neighbor = parse_bool(key, value, line);
  else if (key == "potential") {
    if (value == "lj") s.potential = PotentialKind::LennardJones;
    else if (value == "sd") s.potential = PotentialKind::SpringDashpot;
    else throw ParseError(line, key, "expected lj or sd, got '" + value + "'");
  } else if (key == "layout") {
    try {
      s.layout = parse_layout(value);
    } catch (const ConfigError& e) {
      throw ParseError(line, key, e.what());
    }
  } else if (key == "fill") {
    if (value == "full") s.fill = FillKind::Full;
    else if (value == "diagonal-half") s.fill = FillKind::DiagonalHalf;
    else throw ParseError(line, key, "expected full or diagonal-half, got '" + value + "'");
  } else if (key == "ranks") num(r.ranks);
  else if (key == "rank_grid") r.rank_grid = parse_grid(key, value, line);
  else if (key == "ranks_sequential") r.ranks_sequential = parse_bool(key, value, line);
  else if (key == "balance") {
    if (value == "none") r.balance.curve.reset();
    else if (value == "morton") r.balance.curve = CurveKind::Morton;
    else if (value == "hilbert") r.balance.curve = CurveKind::Hilbert;
    else throw ParseError(line, key, "expected none, morton or hilbert, got '" + value + "'");
  } else if (key == "refine_threshold") num(r.balance.refine_threshold);
  else if (key == "merge_threshold") num(r.balance.merge_threshold);
  else if (key == "max_depth") num(r.balance.max_depth);
  else if (key == "dump") r.dump_path = value;
  else if (key == "dump_every") num(r.dump_every);
  else if (key == "report") r.report_path = value;
  else throw ParseError(line, key, "unknown key");
}

InputDeck parse_deck(std::string_view text, InputDeck base) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, body, "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(line, "", "missing key");
    apply_setting(base, key, value, line);
  }
  return base;
}

InputDeck parse_deck_file(const std::string& path, InputDeck base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("deck", "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_deck(text.str(), std::move(base));
}

}  // namespace nanopair
