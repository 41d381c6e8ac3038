#pragma once

#include <array>
#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "nanopair/core/errors.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

/// Uniform bins over a rank region plus one shell of ghost cells on each side.
/// Cell edges are never smaller than the interaction radius, so a particle's
/// neighbors within that radius lie in the surrounding 27 cells.
class CellGrid {
 public:
  CellGrid() = default;

  /// Sizes the grid for `region` with cell edges >= r. Does not bin anything.
  CellGrid(const AABB& region, double r) : origin_(region.min) {
    const Vec3 ext = region.is_empty() ? Vec3{} : region.extent();
    for (int d = 0; d < 3; ++d) {
      const int n = std::max(1, static_cast<int>(std::floor(ext[d] / r)));
      dims_[d] = n;
      cell_size_[d] = std::max(r, ext[d] / n);
    }
    const std::size_t cells = static_cast<std::size_t>(dims_[0] + 2) * (dims_[1] + 2) * (dims_[2] + 2);
    cell_start_.assign(cells + 1, 0);
  }

  const Vec3& origin() const noexcept { return origin_; }
  const Vec3& cell_size() const noexcept { return cell_size_; }
  /// Interior cell counts (the ghost shell adds one on each side).
  const std::array<int, 3>& dims() const noexcept { return dims_; }
  int cell_count() const noexcept { return static_cast<int>(cell_start_.size()) - 1; }

  /// Interior cell coordinate: floor((p - origin) / cell_size); -1 and dims[d]
  /// denote the ghost shell.
  std::array<int, 3> cell_coord(const Vec3& p) const noexcept {
    return {static_cast<int>(std::floor((p.x - origin_.x) / cell_size_.x)),
            static_cast<int>(std::floor((p.y - origin_.y) / cell_size_.y)),
            static_cast<int>(std::floor((p.z - origin_.z) / cell_size_.z))};
  }

  bool in_grid(const std::array<int, 3>& c) const noexcept {
    for (int d = 0; d < 3; ++d)
      if (c[d] < -1 || c[d] > dims_[d]) return false;
    return true;
  }

  /// Linear id of a coordinate that satisfies in_grid().
  int cell_id(const std::array<int, 3>& c) const noexcept {
    return ((c[2] + 1) * (dims_[1] + 2) + (c[1] + 1)) * (dims_[0] + 2) + (c[0] + 1);
  }

  std::array<int, 3> coord_of(int id) const noexcept {
    const int sx = dims_[0] + 2, sy = dims_[1] + 2;
    return {id % sx - 1, (id / sx) % sy - 1, id / (sx * sy) - 1};
  }

  /// Particle indices binned into `cell`, ascending.
  std::span<const int> bin(int cell) const noexcept {
    return {cell_particles_.data() + cell_start_[cell],
            static_cast<std::size_t>(cell_start_[cell + 1] - cell_start_[cell])};
  }

  /// Cell id of particle i, or -1 for ghosts that fell outside the grid.
  int cell_of(int i) const noexcept { return particle_cell_[i]; }

  int binned_count() const noexcept { return static_cast<int>(cell_particles_.size()); }
  /// Ghosts too far from the region to interact with any local; not binned.
  int skipped_ghosts() const noexcept { return skipped_ghosts_; }

  /// Counting-sort particles into cells. A local outside the grid means it
  /// travelled more than one shell without being exchanged.
  template <ArrayLayout L>
  void bin_particles(const ParticleStore<L>& store) {
    const int n = store.size();
    particle_cell_.assign(n, -1);
    std::fill(cell_start_.begin(), cell_start_.end(), 0);
    skipped_ghosts_ = 0;
    for (int i = 0; i < n; ++i) {
      const Vec3 p = store.position(i);
      const auto c = cell_coord(p);
      if (!in_grid(c)) {
        if (i < store.n_local()) {
          throw ProtocolError("local particle " + std::to_string(i) + " at (" +
                              std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                              std::to_string(p.z) +
                              ") lies beyond the ghost shell; exchange was missed");
        }
        ++skipped_ghosts_;
        continue;
      }
      const int id = cell_id(c);
      particle_cell_[i] = id;
      ++cell_start_[id + 1];
    }
    for (std::size_t c = 1; c < cell_start_.size(); ++c) cell_start_[c] += cell_start_[c - 1];
    cell_particles_.assign(cell_start_.back(), 0);
    std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (int i = 0; i < n; ++i)
      if (particle_cell_[i] >= 0) cell_particles_[fill[particle_cell_[i]]++] = i;
  }

 private:
  Vec3 origin_{};
  Vec3 cell_size_{};
  std::array<int, 3> dims_{1, 1, 1};
  std::vector<int> cell_start_{0};
  std::vector<int> cell_particles_;
  std::vector<int> particle_cell_;
  int skipped_ghosts_ = 0;
};

template <ArrayLayout L>
CellGrid build_cell_grid(const ParticleStore<L>& store, const AABB& rank_aabb, double r) {
  if (!(r > 0.0)) throw ConfigError("interaction_radius", "must be positive");
  CellGrid grid(rank_aabb, r);
  grid.bin_particles(store);
  return grid;
}

}  // namespace nanopair
