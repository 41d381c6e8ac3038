#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nanopair/cli/deck.hpp"
#include "nanopair/cli/report.hpp"
#include "nanopair/cli/runner.hpp"
#include "nanopair/cli/xyz.hpp"
#include "nanopair/core/errors.hpp"

using namespace nanopair;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nanopair_" + name)).string();
}

InputDeck small_deck(int n, int steps) {
  InputDeck d = preset("lj-32");
  d.sim.unit_cells = {n, n, n};
  d.sim.steps = steps;
  return d;
}

}  // namespace

TEST_CASE("lj-32 preset") {
  const InputDeck d = preset("lj-32");
  CHECK(d.sim.unit_cells == std::array<int, 3>{32, 32, 32});
  CHECK(d.sim.particles_per_cell == 4);
  CHECK(d.sim.lattice_density == 0.8442);
  CHECK(d.sim.dt == 0.005);
  CHECK(d.sim.cutoff == 2.5);
  CHECK(d.sim.verlet_buffer == 0.3);
  CHECK(d.sim.reneigh_interval == 20);
  CHECK(d.sim.steps == 100);
  CHECK_NOTHROW(d.validate());
  CHECK_THROWS_AS(preset("nope"), ConfigError);
}

TEST_CASE("sd-halfdomain preset") {
  const InputDeck d = preset("sd-halfdomain");
  CHECK(d.sim.potential == PotentialKind::SpringDashpot);
  CHECK(d.sim.fill == FillKind::DiagonalHalf);
  CHECK(d.sim.stiffness == 0.0);
  CHECK(d.sim.damping == 0.0);
  CHECK_NOTHROW(d.validate());
}

TEST_CASE("an empty deck is the default configuration") {
  const InputDeck d = parse_deck("");
  CHECK(d == InputDeck{});
  CHECK_NOTHROW(d.validate());
  CHECK(parse_deck("# only a comment\n\n   \n") == InputDeck{});
}

TEST_CASE("deck settings") {
  const InputDeck d = parse_deck(
      "nx = 5\nny=6 # trailing comment\n nz = 7\ndt = 0.002\nhalf_neigh = true\n"
      "layout = aosoa:16\npotential = sd\nranks = 4\nbalance = morton\n");
  CHECK(d.sim.unit_cells == std::array<int, 3>{5, 6, 7});
  CHECK(d.sim.dt == 0.002);
  CHECK(d.sim.half_neighbor);
  CHECK(d.sim.layout == LayoutChoice{LayoutKind::AoSoA, 16});
  CHECK(d.sim.potential == PotentialKind::SpringDashpot);
  CHECK(d.run.ranks == 4);
  CHECK(d.run.balance.curve == CurveKind::Morton);
}

TEST_CASE("a value that does not parse names its field and line") {
  try {
    parse_deck("nx = 4\ndt = abc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "dt");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("dt") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_deck("dt = 0.1x"), ParseError);
  CHECK_THROWS_AS(parse_deck("nx = 2.5"), ParseError);
  CHECK_THROWS_AS(parse_deck("layout = aosoa:x"), ParseError);
  CHECK_THROWS_AS(parse_deck("no_equals_sign"), ParseError);
}

TEST_CASE("unknown keys are rejected") {
  try {
    parse_deck("warp_speed = 9");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "warp_speed");
  }
}

TEST_CASE("parsed but invalid values fail validation") {
  CHECK_THROWS_AS(parse_deck("dt = -1").validate(), ConfigError);
  CHECK_THROWS_AS(parse_deck("cutoff = 0").validate(), ConfigError);
  CHECK_THROWS_AS(parse_deck("ranks = 0").validate(), ConfigError);
}

TEST_CASE("layout names") {
  CHECK(parse_layout("aos") == LayoutChoice{LayoutKind::AoS, 8});
  CHECK(parse_layout("soa").kind == LayoutKind::SoA);
  CHECK(parse_layout("aosoa") == LayoutChoice{LayoutKind::AoSoA, 8});
  CHECK(parse_layout("aosoa:4") == LayoutChoice{LayoutKind::AoSoA, 4});
  CHECK_THROWS_AS(parse_layout("aosoa:"), ConfigError);
  CHECK_THROWS_AS(parse_layout("row"), ConfigError);
}

TEST_CASE("an xyz frame has a count line, a comment and one row per particle") {
  std::ostringstream out;
  write_xyz_frame(out, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 7);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == "4");
  CHECK(all[1] == "step 7");
  CHECK(all[2].rfind("A ", 0) == 0);
}

TEST_CASE("xyz round trip is bit-exact") {
  const std::vector<Vec3> pts{{0.1, 1.0 / 3.0, -2.5e-17}, {1e300, -0.0, 6.02214076e23}};
  std::ostringstream out;
  write_xyz_frame(out, pts, 0);
  write_xyz_frame(out, pts, 10);
  std::istringstream in(out.str());
  const auto frames = parse_xyz(in);
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].positions == pts);
  CHECK(frames[1].step == 10);
  std::istringstream bad("2\nstep 0\nA 1 2 3\n");
  CHECK_THROWS_AS(parse_xyz(bad), ParseError);
}

TEST_CASE("dumping every 20 of 100 steps writes six frames") {
  InputDeck d = small_deck(3, 100);
  d.run.dump_path = temp_path("frames.xyz");
  d.run.dump_every = 20;
  const SimReport r = run_command(d);
  std::ifstream in(d.run.dump_path);
  const auto frames = parse_xyz(in);
  REQUIRE(frames.size() == 6);
  for (std::size_t k = 0; k < frames.size(); ++k) {
    CHECK(frames[k].step == static_cast<long long>(20 * k));
    CHECK(frames[k].positions.size() == 108);
  }
  CHECK(r.frames == 6);
  std::filesystem::remove(d.run.dump_path);
}

TEST_CASE("zero steps report the initial state") {
  const SimReport r = run_command(small_deck(3, 0));
  CHECK(r.steps == 0);
  CHECK(r.particles == 108);
  CHECK(r.momentum_drift() == Vec3{});
}

TEST_CASE("reports are deterministic apart from timings") {
  InputDeck d = small_deck(4, 20);
  d.run.ranks = 2;
  auto strip = [](const SimReport& r) {
    std::istringstream in(format_report(r));
    auto m = parse_report(in);
    std::erase_if(m, [](const auto& kv) {
      return kv.first.rfind("time_", 0) == 0 || kv.first.rfind("steps_per", 0) == 0;
    });
    return m;
  };
  const SimReport a = run_command(d);
  const SimReport b = run_command(d);
  CHECK(strip(a) == strip(b));
  long long sum = 0;
  for (long long c : a.counts_after) sum += c;
  CHECK(sum == a.particles);
  CHECK(a.counts_after.size() == 2);
  CHECK(strip(a).count("momentum_drift") == 1);
}

TEST_CASE("runs on several ranks match one rank") {
  InputDeck one = small_deck(4, 20);
  InputDeck four = one;
  four.run.ranks = 4;
  const SimReport a = run_command(one);
  const SimReport b = run_command(four);
  CHECK(a.particles == b.particles);
  for (int d = 0; d < 3; ++d)
    CHECK(std::abs(a.momentum_final[d] - b.momentum_final[d]) < 1e-10);
}
