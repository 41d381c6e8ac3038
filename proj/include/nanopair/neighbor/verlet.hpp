#pragma once

#include <vector>

#include "nanopair/exec/backend.hpp"
#include "nanopair/neighbor/cell_grid.hpp"

namespace nanopair {

/// Per-local-particle Verlet lists stored in an N x capacity int array. The
/// default particle-major layout keeps one particle's neighbors contiguous.
template <ArrayLayout NbL = layout::RowMajor<>>
class NeighborLists {
 public:
  using layout_type = NbL;

  bool half() const noexcept { return half_; }
  int particle_count() const noexcept { return static_cast<int>(counts_.size()); }
  int capacity() const noexcept { return static_cast<int>(entries_.size_y()); }
  int count(int i) const noexcept { return counts_[i]; }
  int neighbor(int i, int k) const noexcept { return entries_.get(i, k); }

  template <class F>
  void for_each_neighbor(int i, F&& f) const {
    const int n = counts_[i];
    for (int k = 0; k < n; ++k) f(entries_.get(i, k));
  }

  std::size_t total_pairs() const noexcept {
    std::size_t s = 0;
    for (int c : counts_) s += static_cast<std::size_t>(c);
    return s;
  }

  const Vec3& reference_position(int i) const noexcept { return ref_positions_[i]; }

  // Mutators used while building.
  void reset(bool half, int n_local, int cap) {
    half_ = half;
    counts_.assign(n_local, 0);
    ref_positions_.resize(n_local);
    if (entries_.size_x() != static_cast<std::size_t>(n_local) ||
        entries_.size_y() != static_cast<std::size_t>(cap))
      entries_ = Array2D<int, NbL>(n_local, cap);
  }
  void set_entry(int i, int k, int j) noexcept { entries_.set(i, k, j); }
  void set_count(int i, int c) noexcept { counts_[i] = c; }
  void set_reference(int i, const Vec3& p) noexcept { ref_positions_[i] = p; }

  static constexpr int kInitialCapacity = 64;

 private:
  bool half_ = false;
  Array2D<int, NbL> entries_;
  std::vector<int> counts_;
  std::vector<Vec3> ref_positions_;
};

/// Fills `lists` for every local particle from the 27 cells around it. Full
/// mode stores each pair at both ends; half mode stores a local-local pair at
/// the lower index only and a local-ghost pair at the local. Per-particle
/// capacity doubles (at least) and the build repeats when any row overflows.
template <bool Half, class Backend, ArrayLayout L, ArrayLayout NbL>
void build_neighbor_lists(const Backend& backend, const ParticleStore<L>& store,
                          const CellGrid& grid, double r, NeighborLists<NbL>& lists) {
  const int n_local = store.n_local();
  const double r2 = r * r;
  int cap = std::max(lists.capacity(), NeighborLists<NbL>::kInitialCapacity);

  for (;;) {
    lists.reset(Half, n_local, cap);

    backend.loop_1d(n_local, [&](int i) {
      const Vec3 pi = store.position(i);
      lists.set_reference(i, pi);
      const auto ci = grid.coord_of(grid.cell_of(i));
      int count = 0;
      for (int dz = -1; dz <= 1; ++dz)
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const std::array<int, 3> c{ci[0] + dx, ci[1] + dy, ci[2] + dz};
            if (!grid.in_grid(c)) continue;
            for (int j : grid.bin(grid.cell_id(c))) {
              if (j == i) continue;
              if constexpr (Half) {
                if (j < n_local && j < i) continue;
              }
              if (length_sq(pi - store.position(j)) < r2) {
                if (count < cap) lists.set_entry(i, count, j);
                ++count;
              }
            }
          }
      lists.set_count(i, count);
    });

    const int needed = backend.reduce(
        n_local, 0, [](int a, int b) { return std::max(a, b); },
        [&](int i) { return lists.count(i); });
    if (needed <= cap) return;
    cap = std::max(2 * cap, needed);
  }
}

template <class Backend, ArrayLayout L, ArrayLayout NbL>
void build_neighbor_lists(const Backend& backend, const ParticleStore<L>& store,
                          const CellGrid& grid, double r, bool half, NeighborLists<NbL>& lists) {
  if (half)
    build_neighbor_lists<true>(backend, store, grid, r, lists);
  else
    build_neighbor_lists<false>(backend, store, grid, r, lists);
}

/// Largest displacement of any local particle since the lists were built.
template <class Backend, ArrayLayout L, ArrayLayout NbL>
double max_displacement_since_rebuild(const Backend& backend, const ParticleStore<L>& store,
                                      const NeighborLists<NbL>& lists) {
  const int n = std::min(store.n_local(), lists.particle_count());
  const double m2 = backend.reduce(
      n, 0.0, [](double a, double b) { return std::max(a, b); },
      [&](int i) { return length_sq(store.position(i) - lists.reference_position(i)); });
  return std::sqrt(m2);
}

}  // namespace nanopair
