#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "nanopair/exec/backend.hpp"
#include "nanopair/layout/array2d.hpp"

using namespace nanopair;

namespace {

template <class L>
void check_injective(std::size_t nx, std::size_t ny) {
  std::set<std::size_t> seen;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      const std::size_t k = L::index(nx, ny, x, y);
      CHECK(k < L::capacity(nx, ny));
      seen.insert(k);
    }
  CHECK(seen.size() == nx * ny);
}

template <class L>
std::vector<Vec3> round_trip(const std::vector<Vec3>& rows) {
  RealArray<L> a(rows.size(), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) set_vec3(a, i, rows[i]);
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(get_vec3(a, i));
  return out;
}

}  // namespace

TEST_CASE("index formulas on the worked examples") {
  CHECK(layout::RowMajor<>::index(10, 3, 2, 1) == 7);
  CHECK(layout::ColumnMajor<>::index(5, 3, 2, 1) == 7);
  CHECK(layout::Clustered<4>::index(8, 3, 5, 1) == 17);
}

TEST_CASE("index functions are injective into capacity") {
  for (std::size_t nx = 1; nx <= 64; nx += 7)
    for (std::size_t ny = 1; ny <= 8; ++ny) {
      check_injective<layout::RowMajor<>>(nx, ny);
      check_injective<layout::ColumnMajor<>>(nx, ny);
      check_injective<layout::Clustered<1>>(nx, ny);
      check_injective<layout::Clustered<4>>(nx, ny);
      check_injective<layout::Clustered<8>>(nx, ny);
    }
}

TEST_CASE("cluster size 1 degenerates to row-major") {
  for (std::size_t x = 0; x < 9; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      CHECK(layout::Clustered<1>::index(9, 4, x, y) == layout::RowMajor<>::index(9, 4, x, y));
}

TEST_CASE("clustered capacity pads to whole clusters") {
  CHECK(layout::Clustered<8>::capacity(1, 3) == 24);
  CHECK(layout::Clustered<8>::capacity(9, 3) == 48);
  RealArray<layout::Clustered<8>> a(5, 3);
  CHECK(a.capacity() == 24);
  for (double v : a.raw()) CHECK(v == 0.0);
}

TEST_CASE("get/set/add round trips under every layout") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Vec3> rows(37);
  for (auto& r : rows) r = {u(rng), u(rng), u(rng)};
  CHECK(round_trip<layout::RowMajor<>>(rows) == rows);
  CHECK(round_trip<layout::ColumnMajor<>>(rows) == rows);
  CHECK(round_trip<layout::Clustered<4>>(rows) == rows);
  CHECK(round_trip<layout::Clustered<16>>(rows) == rows);

  RealArray<layout::ColumnMajor<>> a(4, 3);
  a.set(2, 1, 1.5);
  a.add(2, 1, 0.0);
  CHECK(a.get(2, 1) == 1.5);
  add_vec3(a, 3, Vec3{1, 2, 3});
  add_vec3(a, 3, Vec3{1, 2, 3});
  CHECK(get_vec3(a, 3) == Vec3{2, 4, 6});
}

TEST_CASE("SoA and AoS buffers of the same data are permutations") {
  RealArray<layout::RowMajor<>> aos(11, 3);
  RealArray<layout::ColumnMajor<>> soa(11, 3);
  for (std::size_t i = 0; i < 11; ++i)
    for (std::size_t y = 0; y < 3; ++y) {
      aos.set(i, y, 10.0 * i + y);
      soa.set(i, y, 10.0 * i + y);
    }
  std::vector<double> a(aos.raw().begin(), aos.raw().end());
  std::vector<double> b(soa.raw().begin(), soa.raw().end());
  CHECK(a != b);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("resize keeps logical contents") {
  RealArray<layout::Clustered<4>> a(3, 3);
  for (std::size_t i = 0; i < 3; ++i) set_vec3(a, i, Vec3{1.0 * i, 2.0 * i, 3.0 * i});
  a.resize_x(13);
  for (std::size_t i = 0; i < 3; ++i) CHECK(get_vec3(a, i) == Vec3{1.0 * i, 2.0 * i, 3.0 * i});
  CHECK(get_vec3(a, 12) == Vec3{});
}

TEST_CASE("atomic add is exact under concurrent callers") {
  RealArray<layout::RowMajor<true>> a(2, 3);
  ThreadedBackend backend(4);
  const int n = 20000;
  backend.loop_1d(n, [&](int) { a.add(1, 2, 1.0); });
  CHECK(a.get(1, 2) == static_cast<double>(n));
}

TEST_CASE("threaded reduction is deterministic and matches serial") {
  ThreadedBackend t(3);
  SerialBackend s;
  auto sq = [](int i) { return static_cast<long long>(i) * i; };
  auto plus = [](long long a, long long b) { return a + b; };
  CHECK(t.reduce(1000, 0LL, plus, sq) == s.reduce(1000, 0LL, plus, sq));
  CHECK(t.reduce(0, 5LL, plus, sq) == 5LL);
}

TEST_CASE("exceptions inside a threaded loop reach the caller") {
  ThreadedBackend t(4);
  CHECK_THROWS_AS(t.loop_1d(100, [](int i) {
    if (i == 57) throw std::runtime_error("boom");
  }),
                  std::runtime_error);
}
