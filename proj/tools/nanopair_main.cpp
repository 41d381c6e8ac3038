#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nanopair/cli/deck.hpp"
#include "nanopair/cli/report.hpp"
#include "nanopair/cli/runner.hpp"
#include "nanopair/core/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nanopair: pairwise particle simulation"};
  std::string preset_name;
  std::string deck_path;
  app.add_option("--preset", preset_name, "Starting configuration")->check(CLI::IsMember({"lj-32", "sd-halfdomain"}));
  app.add_option("--deck", deck_path, "key = value input deck applied after the preset");

  // Flag values are kept as text and applied through the deck parser, so
  // flags and deck lines share one set of rules. Order: preset, deck, flags.
  std::vector<std::pair<std::string, std::optional<std::string>>> values;
  auto text_flag = [&](const std::string& flag, const std::string& key, const std::string& help) {
    values.emplace_back(key, std::nullopt);
    const std::size_t slot = values.size() - 1;
    app.add_option_function<std::string>(flag, [&values, slot](const std::string& v) { values[slot].second = v; }, help);
  };
  text_flag("--nx", "nx", "Unit cells along x");
  text_flag("--ny", "ny", "Unit cells along y");
  text_flag("--nz", "nz", "Unit cells along z");
  text_flag("--steps", "steps", "Time steps");
  text_flag("--dt", "dt", "Time step size");
  text_flag("--cutoff", "cutoff", "Force cutoff radius");
  text_flag("--buffer", "buffer", "Verlet buffer");
  text_flag("--reneigh-every", "reneigh_every", "Steps between neighbor list rebuilds");
  text_flag("--layout", "layout", "aos, soa or aosoa:<c>");
  text_flag("--potential", "potential", "lj or sd");
  text_flag("--ranks", "ranks", "Number of simulated ranks");
  text_flag("--rank-grid", "rank_grid", "Rank grid XxYxZ");
  text_flag("--balance", "balance", "none, morton or hilbert");
  text_flag("--dump", "dump", "XYZ trajectory path");
  text_flag("--dump-every", "dump_every", "Steps between trajectory frames");
  text_flag("--seed", "seed", "Velocity seed");
  text_flag("--report", "report", "Also write the report to this path");
  bool half = false;
  bool sequential = false;
  app.add_flag("--half-neigh", half, "Half neighbor lists");
  app.add_flag("--ranks-sequential", sequential, "Run ranks round-robin on one thread");

  CLI11_PARSE(app, argc, argv);

  nanopair::InputDeck deck;
  try {
    if (!preset_name.empty()) deck = nanopair::preset(preset_name);
    if (!deck_path.empty()) deck = nanopair::parse_deck_file(deck_path, deck);
    for (const auto& [key, value] : values)
      if (value) nanopair::apply_setting(deck, key, *value, 0);
    if (half) deck.sim.half_neighbor = true;
    if (sequential) deck.run.ranks_sequential = true;
    deck.validate();
  } catch (const nanopair::Error& e) {
    std::cerr << "nanopair: " << e.what() << '\n';
    return 2;
  }

  try {
    const nanopair::SimReport report = nanopair::run_command(deck);
    nanopair::write_report(std::cout, report);
    if (!deck.run.report_path.empty()) {
      std::ofstream out(deck.run.report_path);
      if (!out) throw std::runtime_error("cannot write report to '" + deck.run.report_path + "'");
      nanopair::write_report(out, report);
    }
  } catch (const nanopair::GuardViolation& e) {
    std::cerr << "nanopair: " << e.what() << "; increase --buffer or lower --reneigh-every\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "nanopair: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
