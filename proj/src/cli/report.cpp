#include "nanopair/cli/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace nanopair {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_report(std::ostream& out, const SimReport& r) {
  const SimConfig& c = r.deck.sim;
  const RunOptions& o = r.deck.run;
  auto kv = [&](const std::string& k, const std::string& v) { out << k << ' ' << v << '\n'; };

  kv("nx", std::to_string(c.unit_cells[0]));
  kv("ny", std::to_string(c.unit_cells[1]));
  kv("nz", std::to_string(c.unit_cells[2]));
  kv("particles_per_cell", std::to_string(c.particles_per_cell));
  kv("density", num(c.lattice_density));
  kv("dt", num(c.dt));
  kv("cutoff", num(c.cutoff));
  kv("buffer", num(c.verlet_buffer));
  kv("reneigh_every", std::to_string(c.reneigh_interval));
  kv("potential", to_string(c.potential));
  kv("layout", to_string(c.layout));
  kv("half_neigh", c.half_neighbor ? "1" : "0");
  kv("fill", to_string(c.fill));
  kv("seed", std::to_string(c.rng_seed));
  kv("ranks", std::to_string(o.ranks));
  kv("rank_grid", std::to_string(r.rank_grid[0]) + "x" + std::to_string(r.rank_grid[1]) + "x" +
                      std::to_string(r.rank_grid[2]));
  kv("balance", o.balance.curve ? to_string(*o.balance.curve) : "none");

  kv("particles", std::to_string(r.particles));
  kv("steps", std::to_string(r.steps));
  kv("epochs", std::to_string(r.epochs));
  for (std::size_t k = 0; k < r.counts_before.size(); ++k)
    kv("rank_particles_before." + std::to_string(k), std::to_string(r.counts_before[k]));
  for (std::size_t k = 0; k < r.counts_after.size(); ++k)
    kv("rank_particles_after." + std::to_string(k), std::to_string(r.counts_after[k]));
  kv("imbalance_before", num(r.imbalance_before));
  kv("imbalance_after", num(r.imbalance_after));
  kv("leaves", std::to_string(r.leaves));
  kv("migrated", std::to_string(r.migrated));
  const Vec3 drift = r.momentum_drift();
  kv("momentum_initial", num(r.momentum_initial.x) + " " + num(r.momentum_initial.y) + " " +
                             num(r.momentum_initial.z));
  kv("momentum_final", num(r.momentum_final.x) + " " + num(r.momentum_final.y) + " " +
                           num(r.momentum_final.z));
  kv("momentum_drift", num(drift.x) + " " + num(drift.y) + " " + num(drift.z));
  kv("max_displacement", num(r.max_displacement));
  kv("guard_violations", std::to_string(r.guard_violations));
  kv("frames", std::to_string(r.frames));

  kv("time_force", num(r.time_force));
  kv("time_neigh", num(r.time_neigh));
  kv("time_comm", num(r.time_comm));
  kv("time_other", num(r.time_other));
  kv("time_total", num(r.wall_time));
  kv("steps_per_second", num(r.steps_per_second()));
}

std::string format_report(const SimReport& r) {
  std::ostringstream out;
  write_report(out, r);
  return out.str();
}

std::map<std::string, std::string> parse_report(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto sp = line.find(' ');
    if (line.empty()) continue;
    if (sp == std::string::npos)
      out[line] = "";
    else
      out[line.substr(0, sp)] = line.substr(sp + 1);
  }
  return out;
}

}  // namespace nanopair
