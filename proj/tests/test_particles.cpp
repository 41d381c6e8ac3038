#include <algorithm>
#include <random>

#include "doctest.h"
#include "nanopair/particles/lattice.hpp"
#include "nanopair/particles/store.hpp"
#include "nanopair/comm/pattern.hpp"

using namespace nanopair;

namespace {

SimConfig cells(int n, int ppc = 4) {
  SimConfig c;
  c.unit_cells = {n, n, n};
  c.particles_per_cell = ppc;
  return c;
}

template <class L>
void shadow_list_check(unsigned seed) {
  ParticleStore<L> store;
  std::vector<std::pair<Vec3, Vec3>> shadow;
  std::vector<Vec3> ghosts;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  int next = 0;
  for (int op = 0; op < 2000; ++op) {
    const double r = u(rng);
    if (r < 0.45 || shadow.empty()) {
      const Vec3 p{double(next), 0, 0}, v{0, double(next), 0};
      ++next;
      store.append_local(p, v);
      shadow.emplace_back(p, v);
    } else if (r < 0.85) {
      const int i = static_cast<int>(u(rng) * store.n_local());
      const Vec3 p = store.position(i);
      store.remove_local(i);
      shadow.erase(std::find_if(shadow.begin(), shadow.end(), [&](auto& s) { return s.first == p; }));
    } else {
      const Vec3 g{-1.0 - ghosts.size(), 0, 0};
      store.append_ghost(g, Vec3{}, GhostSource{1, static_cast<int>(ghosts.size())});
      ghosts.push_back(g);
    }
    REQUIRE(store.n_local() == static_cast<int>(shadow.size()));
    REQUIRE(store.n_ghost() == static_cast<int>(ghosts.size()));
  }
  std::vector<std::pair<Vec3, Vec3>> live;
  for (int i = 0; i < store.n_local(); ++i) live.emplace_back(store.position(i), store.velocity(i));
  std::sort(live.begin(), live.end());
  std::sort(shadow.begin(), shadow.end());
  CHECK(live == shadow);
  // Ghosts keep their sources paired with their positions.
  for (int g = 0; g < store.n_ghost(); ++g) {
    const Vec3 p = store.position(store.n_local() + g);
    CHECK(p.x == -1.0 - store.ghost_source(g).remote_index);
  }
}

}  // namespace

TEST_CASE("lattice sizes") {
  CHECK(lattice_records(cells(32)).size() == 131072);
  CHECK(lattice_records(cells(1)).size() == 4);
  CHECK(lattice_records(cells(3, 2)).size() == 54);
  SimConfig one = cells(1);
  const AABB g = global_domain(one);
  for (const auto& r : lattice_records(one)) CHECK(g.contains(r.position));
}

TEST_CASE("the 96^3 lattice has 3,538,944 sites") {
  // Count without materializing velocities twice: sites = n^3 * ppc.
  SimConfig c = cells(96);
  CHECK(static_cast<long long>(c.unit_cells[0]) * c.unit_cells[1] * c.unit_cells[2] *
            c.particles_per_cell ==
        3538944);
}

TEST_CASE("lattice velocities have zero net momentum and depend only on the seed") {
  SimConfig c = cells(5);
  const auto a = lattice_records(c);
  Vec3 sum{};
  for (const auto& r : a) sum += r.velocity;
  CHECK(std::abs(sum.x) < 1e-12);
  CHECK(std::abs(sum.y) < 1e-12);
  CHECK(std::abs(sum.z) < 1e-12);
  CHECK(lattice_records(c) == a);
  c.rng_seed = 99;
  CHECK_FALSE(lattice_records(c) == a);
}

TEST_CASE("diagonal half fill keeps the lower diagonal half") {
  SimConfig c = cells(8);
  c.fill = FillKind::DiagonalHalf;
  const AABB g = global_domain(c);
  const auto recs = lattice_records(c);
  for (const auto& r : recs)
    CHECK(r.position.x / g.max.x + r.position.y / g.max.y + r.position.z / g.max.z < 1.5);
  const double frac = static_cast<double>(recs.size()) / (8 * 8 * 8 * 4);
  CHECK(frac > 0.45);
  CHECK(frac < 0.55);
}

TEST_CASE("create_lattice over rank boxes partitions the lattice") {
  SimConfig c = cells(4);
  const AABB g = global_domain(c);
  const RankGrid grid{{2, 2, 2}};
  std::vector<ParticleRecord> all;
  for (int r = 0; r < 8; ++r) {
    auto s = create_lattice<layout::RowMajor<>>(c, grid.box(r, g));
    for (int i = 0; i < s.n_local(); ++i) {
      CHECK(grid.box(r, g).contains(s.position(i)));
      CHECK(s.force(i) == Vec3{});
      all.push_back({s.position(i), s.velocity(i)});
    }
  }
  std::sort(all.begin(), all.end());
  auto expect = lattice_records(c);
  std::sort(expect.begin(), expect.end());
  CHECK(all == expect);
}

TEST_CASE("append and remove keep locals and ghosts contiguous") {
  ParticleStore<layout::RowMajor<>> s;
  s.append_local({1, 0, 0}, {});
  s.append_local({2, 0, 0}, {});
  s.append_ghost({9, 0, 0}, {}, {3, 0});
  s.append_ghost({8, 0, 0}, {}, {3, 1});
  s.append_local({3, 0, 0}, {});
  CHECK(s.n_local() == 3);
  CHECK(s.n_ghost() == 2);
  // Removing the last local touches nothing else.
  const Vec3 before0 = s.position(0), before1 = s.position(1);
  s.remove_local(2);
  CHECK(s.position(0) == before0);
  CHECK(s.position(1) == before1);
  CHECK(s.n_local() == 2);
  std::vector<double> gx;
  for (int g = 0; g < s.n_ghost(); ++g) {
    gx.push_back(s.position(s.n_local() + g).x);
    CHECK(s.position(s.n_local() + g).x == 9.0 - s.ghost_source(g).remote_index);
  }
  std::sort(gx.begin(), gx.end());
  CHECK(gx == std::vector<double>{8, 9});
  s.append_local({4, 0, 0}, {});
  s.remove_local(2);
  CHECK(s.n_local() == 2);
}

TEST_CASE("random append/remove preserves the particle multiset") {
  shadow_list_check<layout::RowMajor<>>(1);
  shadow_list_check<layout::ColumnMajor<>>(2);
  shadow_list_check<layout::Clustered<8>>(3);
}

TEST_CASE("identical operations give identical states under every layout") {
  auto build = [](auto tag) {
    using L = decltype(tag);
    ParticleStore<L> s;
    for (int i = 0; i < 30; ++i) s.append_local({double(i), 1.0 * i * i, 0}, {0, 0, double(i)});
    for (int i = 0; i < 10; ++i) s.remove_local((7 * i) % s.n_local());
    return sorted_locals(s);
  };
  const auto a = build(layout::RowMajor<>{});
  CHECK(build(layout::ColumnMajor<>{}) == a);
  CHECK(build(layout::Clustered<4>{}) == a);
}

TEST_CASE("capacity grows on demand") {
  ParticleStore<layout::Clustered<8>> s(2);
  for (int i = 0; i < 100; ++i) s.append_local({double(i), 0, 0}, {});
  CHECK(s.capacity() >= 100);
  for (int i = 0; i < 100; ++i) CHECK(s.position(i).x == i);
  s.resize_ghost_region(5);
  CHECK(s.size() == 105);
  s.clear_ghosts();
  CHECK(s.size() == 100);
}
