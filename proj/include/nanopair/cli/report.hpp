#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nanopair/cli/deck.hpp"
#include "nanopair/core/vec3.hpp"

namespace nanopair {

/// Outcome of one run. Timings are the maximum over ranks.
struct SimReport {
  InputDeck deck{};
  std::array<int, 3> rank_grid{1, 1, 1};
  long long particles = 0;
  int steps = 0;
  int epochs = 0;
  double time_force = 0.0;
  double time_neigh = 0.0;
  double time_comm = 0.0;
  double time_other = 0.0;
  double wall_time = 0.0;
  std::vector<long long> counts_before;  // per rank, before balancing
  std::vector<long long> counts_after;   // per rank, after balancing
  double imbalance_before = 1.0;
  double imbalance_after = 1.0;
  int leaves = 0;
  int migrated = 0;
  Vec3 momentum_initial{};
  Vec3 momentum_final{};
  double max_displacement = 0.0;
  int guard_violations = 0;
  int frames = 0;

  double steps_per_second() const { return wall_time > 0.0 ? steps / wall_time : 0.0; }
  Vec3 momentum_drift() const { return momentum_final - momentum_initial; }
};

/// Line-oriented `key value` text; keys starting with "time_" or "steps_per"
/// carry timings, everything else is deterministic for a given deck and seed.
void write_report(std::ostream& out, const SimReport& r);
std::string format_report(const SimReport& r);

/// Key/value map of a report; values are kept as text.
std::map<std::string, std::string> parse_report(std::istream& in);

}  // namespace nanopair
