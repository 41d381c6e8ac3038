#include <random>

#include "doctest.h"
#include "nanopair/core/aabb.hpp"
#include "nanopair/core/config.hpp"
#include "nanopair/core/errors.hpp"
#include "nanopair/core/periodic.hpp"

using namespace nanopair;

namespace {

const AABB box8{{0, 0, 0}, {8, 8, 8}};

// Repeated-subtraction oracle for one coordinate.
double wrap_oracle(double v, double lo, double hi) {
  const double len = hi - lo;
  while (v >= hi) v -= len;
  while (v < lo) v += len;
  return v;
}

}  // namespace

TEST_CASE("pbc_correct wraps into the half-open box") {
  CHECK(pbc_correct({-0.1, 1, 1}, box8).x == doctest::Approx(7.9).epsilon(1e-15));
  CHECK(pbc_correct({1, 2, 3}, box8) == Vec3{1, 2, 3});
  CHECK(pbc_correct({16.5, 0, 0}, box8).x == 0.5);
  CHECK(pbc_correct({8.0, 0, 0}, box8).x == 0.0);
  // Rounding: -tiny wraps onto the upper edge, which must map back to lo.
  CHECK(pbc_correct({-1e-17, 0, 0}, box8).x < 8.0);
}

TEST_CASE("pbc_correct agrees with the repeated-subtraction oracle and is idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  const AABB b{{-1.5, 0.0, 2.0}, {3.5, 4.0, 9.0}};
  for (int k = 0; k < 10000; ++k) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    const Vec3 q = pbc_correct(p, b);
    for (int d = 0; d < 3; ++d) {
      CHECK(q[d] >= b.min[d]);
      CHECK(q[d] < b.max[d]);
      CHECK(q[d] == doctest::Approx(wrap_oracle(p[d], b.min[d], b.max[d])).epsilon(1e-12));
    }
    CHECK(pbc_correct(q, b) == q);
  }
}

TEST_CASE("minimum_image matches the 27-image search") {
  CHECK(minimum_image({7.9, 0, 0}, box8).x == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(minimum_image({0, 0, 0}, box8) == Vec3{});
  CHECK(minimum_image({4.0, -4.0, 0}, box8) == Vec3{4.0, 4.0, 0});  // (-L/2, L/2]

  std::mt19937_64 rng(11);
  const AABB b{{0, 0, 0}, {5, 6, 7}};
  std::uniform_real_distribution<double> u(-1.4, 1.4);
  for (int k = 0; k < 5000; ++k) {
    const Vec3 d{u(rng) * 5, u(rng) * 6, u(rng) * 7};
    const Vec3 m = minimum_image(d, b);
    double best = INFINITY;
    for (int a = -1; a <= 1; ++a)
      for (int c = -1; c <= 1; ++c)
        for (int e = -1; e <= 1; ++e) best = std::min(best, length_sq(d + Vec3{a * 5.0, c * 6.0, e * 7.0}));
    CHECK(length_sq(m) == doctest::Approx(best).epsilon(1e-12));
    for (int dd = 0; dd < 3; ++dd) {
      CHECK(m[dd] > -0.5 * b.extent()[dd]);
      CHECK(m[dd] <= 0.5 * b.extent()[dd]);
    }
  }
}

TEST_CASE("aabb_union is a commutative idempotent monoid") {
  const AABB a{{0, 0, 0}, {1, 1, 1}};
  const AABB b{{2, 2, 2}, {3, 3, 3}};
  CHECK(aabb_union(a, a) == a);
  CHECK(aabb_union(a, b) == AABB{{0, 0, 0}, {3, 3, 3}});
  CHECK(aabb_union(a, b) == aabb_union(b, a));
  CHECK(aabb_union(AABB::empty(), a) == a);
  // The inverted box used to seed reductions behaves as an identity too.
  CHECK(aabb_union(AABB::inverted(box8), a) == aabb_union(AABB::inverted(box8), a));
  CHECK(AABB::inverted(box8).is_empty());

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<AABB> blocks;
  for (int k = 0; k < 50; ++k) {
    const Vec3 p{u(rng), u(rng), u(rng)};
    blocks.push_back({p, p + Vec3{1, 2, 3}});
  }
  AABB sorted_fold = AABB::empty();
  for (const auto& bl : blocks) sorted_fold = aabb_union(sorted_fold, bl);
  std::shuffle(blocks.begin(), blocks.end(), rng);
  AABB shuffled_fold = AABB::empty();
  for (const auto& bl : blocks) shuffled_fold = aabb_union(shuffled_fold, bl);
  CHECK(sorted_fold == shuffled_fold);
}

TEST_CASE("AABB containment is half-open and distances are Euclidean gaps") {
  CHECK(box8.contains({0, 0, 0}));
  CHECK_FALSE(box8.contains({8, 0, 0}));
  CHECK(distance_sq(box8, Vec3{10, 0, 0}) == 4.0);
  CHECK(distance_sq(box8, Vec3{11, 12, 4}) == 9.0 + 16.0);
  CHECK(distance_sq(box8, AABB{{9, 9, 9}, {10, 10, 10}}) == 3.0);
  CHECK(aabb_intersection(box8, AABB{{9, 0, 0}, {10, 1, 1}}).is_empty());
}

TEST_CASE("SimConfig validation names the offending field") {
  SimConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = -1.0;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "dt");
  }
  SimConfig d;
  d.layout = {LayoutKind::AoSoA, 6};
  CHECK_THROWS_AS(d.validate(), ConfigError);
  SimConfig z;
  z.unit_cells = {0, 1, 1};
  CHECK_THROWS_AS(z.validate(), ConfigError);
}

TEST_CASE("lattice constant and global domain") {
  SimConfig c;
  CHECK(lattice_constant(c) == doctest::Approx(std::cbrt(4.0 / 0.8442)));
  CHECK(global_domain(c).max.x == doctest::Approx(32 * std::cbrt(4.0 / 0.8442)));
}

TEST_CASE("rank grid factorization") {
  const AABB cube{{0, 0, 0}, {10, 10, 10}};
  CHECK(choose_rank_grid(1, cube) == std::array<int, 3>{1, 1, 1});
  CHECK(choose_rank_grid(2, cube) == std::array<int, 3>{2, 1, 1});
  CHECK(choose_rank_grid(4, cube) == std::array<int, 3>{2, 2, 1});
  CHECK(choose_rank_grid(8, cube) == std::array<int, 3>{2, 2, 2});
  const AABB slab{{0, 0, 0}, {40, 10, 10}};
  CHECK(choose_rank_grid(4, slab) == std::array<int, 3>{4, 1, 1});
  for (int p = 1; p <= 12; ++p) {
    const auto g = choose_rank_grid(p, cube);
    CHECK(g[0] * g[1] * g[2] == p);
  }
}

TEST_CASE("run and balance options validate") {
  RunOptions r;
  CHECK_NOTHROW(r.validate());
  r.ranks = 4;
  r.rank_grid = std::array<int, 3>{2, 1, 1};
  CHECK_THROWS_AS(r.validate(), ConfigError);
  BalanceOptions b;
  b.merge_threshold = 900;
  CHECK_THROWS_AS(b.validate(), ConfigError);
}
