#include <random>
#include <set>

#include "doctest.h"
#include "nanopair/comm/pattern.hpp"
#include "nanopair/neighbor/cell_grid.hpp"
#include "nanopair/neighbor/verlet.hpp"
#include "neighbor_oracle.hpp"

using namespace nanopair;

namespace {

using Store = ParticleStore<layout::RowMajor<>>;
using testing_support::Cloud;
using testing_support::brute_force;
using testing_support::listed;
using testing_support::periodic_cloud;

}  // namespace

TEST_CASE("cell coordinates use floor division with the boundary in the higher cell") {
  const CellGrid g(AABB{{0, 0, 0}, {28, 28, 28}}, 2.8);
  CHECK(g.cell_size().x >= 2.8);
  CHECK(g.cell_coord({5.7, 0.1, 0.2}) == std::array<int, 3>{2, 0, 0});
  const double s = g.cell_size().x;
  CHECK(g.cell_coord({s, 0, 0})[0] == 1);
  CHECK(g.cell_coord({-0.1, 0, 0})[0] == -1);
}

TEST_CASE("cell edges never fall below the interaction radius") {
  for (double ext : {0.5, 2.9, 3.0, 7.77, 100.0}) {
    const CellGrid g(AABB{{0, 0, 0}, {ext, ext, 2 * ext}}, 1.3);
    for (int d = 0; d < 3; ++d) CHECK(g.cell_size()[d] >= 1.3);
  }
}

TEST_CASE("every particle is binned exactly once") {
  const AABB box{{0, 0, 0}, {9, 10, 11}};
  Cloud c = periodic_cloud(500, box, 2.0, 3);
  const CellGrid g = build_cell_grid(c.store, box, 2.0);
  CHECK(g.binned_count() == c.store.size());
  CHECK(g.skipped_ghosts() == 0);
  std::vector<int> seen(c.store.size(), 0);
  for (int cell = 0; cell < g.cell_count(); ++cell)
    for (int i : g.bin(cell)) {
      ++seen[i];
      CHECK(g.cell_of(i) == cell);
    }
  for (int s : seen) CHECK(s == 1);
}

TEST_CASE("a local beyond the ghost shell is a protocol error; far ghosts are skipped") {
  Store s;
  s.append_local({1, 1, 1}, {});
  s.append_ghost({50, 1, 1}, {}, {0, 0});
  const AABB box{{0, 0, 0}, {6, 6, 6}};
  const CellGrid g = build_cell_grid(s, box, 2.0);
  CHECK(g.skipped_ghosts() == 1);
  Store bad;
  bad.append_local({-5, 1, 1}, {});
  CHECK_THROWS_AS(build_cell_grid(bad, box, 2.0), ProtocolError);
  CHECK_THROWS_AS(build_cell_grid(s, box, 0.0), ConfigError);
}

TEST_CASE("two particles: mutual in full mode, once in half mode") {
  const double r = 2.0;
  for (double frac : {0.9, 1.1}) {
    Store s;
    s.append_local({5, 5, 5}, {});
    s.append_local({5 + frac * r, 5, 5}, {});
    const CellGrid g = build_cell_grid(s, AABB{{0, 0, 0}, {12, 12, 12}}, r);
    NeighborLists<> full, half;
    build_neighbor_lists<false>(SerialBackend{}, s, g, r, full);
    build_neighbor_lists<true>(SerialBackend{}, s, g, r, half);
    const std::size_t expect = frac < 1 ? 1 : 0;
    CHECK(full.count(0) == expect);
    CHECK(full.count(1) == expect);
    CHECK(half.total_pairs() == expect);
  }
}

TEST_CASE("lists equal the brute-force pair set under periodic images") {
  const AABB box{{0, 0, 0}, {10, 10, 10}};
  const double r = 2.8;
  Cloud c = periodic_cloud(300, box, r, 17);
  const CellGrid g = build_cell_grid(c.store, box, r);
  for (bool half : {false, true}) {
    NeighborLists<> lists;
    build_neighbor_lists(SerialBackend{}, c.store, g, r, half, lists);
    std::size_t dup = 0;
    CHECK(listed(c, lists, dup) == brute_force(c, box, r, half));
    CHECK(dup == 0);
    NeighborLists<layout::ColumnMajor<>> neighbor_major;
    build_neighbor_lists(SerialBackend{}, c.store, g, r, half, neighbor_major);
    CHECK(listed(c, neighbor_major, dup) == brute_force(c, box, r, half));
  }
}

TEST_CASE("capacity regrows for crowded neighborhoods") {
  Store s;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(4.0, 5.0);
  for (int i = 0; i < 200; ++i) s.append_local({u(rng), u(rng), u(rng)}, {});
  const CellGrid g = build_cell_grid(s, AABB{{0, 0, 0}, {10, 10, 10}}, 2.0);
  NeighborLists<> lists;
  build_neighbor_lists<false>(SerialBackend{}, s, g, 2.0, lists);
  CHECK(lists.capacity() >= 199);
  for (int i = 0; i < 200; ++i) CHECK(lists.count(i) == 199);
}

TEST_CASE("rebuilding is deterministic, serial and threaded alike") {
  const AABB box{{0, 0, 0}, {10, 10, 10}};
  Cloud c = periodic_cloud(400, box, 2.5, 23);
  const CellGrid g = build_cell_grid(c.store, box, 2.5);
  NeighborLists<> a, b, t;
  build_neighbor_lists<true>(SerialBackend{}, c.store, g, 2.5, a);
  build_neighbor_lists<true>(SerialBackend{}, c.store, g, 2.5, b);
  build_neighbor_lists<true>(ThreadedBackend(3), c.store, g, 2.5, t);
  for (int i = 0; i < c.store.n_local(); ++i) {
    REQUIRE(a.count(i) == b.count(i));
    REQUIRE(a.count(i) == t.count(i));
    for (int k = 0; k < a.count(i); ++k) {
      CHECK(a.neighbor(i, k) == b.neighbor(i, k));
      CHECK(a.neighbor(i, k) == t.neighbor(i, k));
    }
  }
}

TEST_CASE("displacement since rebuild") {
  const AABB box{{0, 0, 0}, {10, 10, 10}};
  Cloud c = periodic_cloud(100, box, 2.0, 5);
  const CellGrid g = build_cell_grid(c.store, box, 2.0);
  NeighborLists<> lists;
  build_neighbor_lists<false>(SerialBackend{}, c.store, g, 2.0, lists);
  CHECK(max_displacement_since_rebuild(SerialBackend{}, c.store, lists) == 0.0);
  c.store.set_position(7, c.store.position(7) + Vec3{0.3, 0.4, 0});
  CHECK(max_displacement_since_rebuild(SerialBackend{}, c.store, lists) == doctest::Approx(0.5));

  // Random walk of k steps of length s moves no particle further than k*s.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0, 1);
  const int k = 25;
  const double step = 0.01;
  for (int w = 0; w < k; ++w)
    for (int i = 0; i < c.store.n_local(); ++i) {
      Vec3 d{n(rng), n(rng), n(rng)};
      d *= step / length(d);
      c.store.set_position(i, c.store.position(i) + d);
    }
  CHECK(max_displacement_since_rebuild(SerialBackend{}, c.store, lists) <= 0.5 + k * step + 1e-12);
}
