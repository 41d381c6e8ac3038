#pragma once

#include <algorithm>
#include <cassert>
#include <vector>

#include "nanopair/core/aabb.hpp"
#include "nanopair/layout/array2d.hpp"

namespace nanopair {

/// Where a ghost was copied from: the sending rank and the index it had there.
struct GhostSource {
  int owner_rank = -1;
  int remote_index = -1;

  friend bool operator==(const GhostSource&, const GhostSource&) = default;
};

/// Positions, velocities and forces of N = n_local + n_ghost particles stored as
/// N x 3 arrays under layout `L`. Ghosts always occupy [n_local, N).
template <ArrayLayout L>
class ParticleStore {
 public:
  using layout_type = L;

  explicit ParticleStore(int capacity = 0) { grow_to(std::max(capacity, 1)); }

  int n_local() const noexcept { return n_local_; }
  int n_ghost() const noexcept { return n_ghost_; }
  int size() const noexcept { return n_local_ + n_ghost_; }
  int capacity() const noexcept { return capacity_; }

  Vec3 position(int i) const noexcept { return get_vec3(pos_, check(i)); }
  Vec3 velocity(int i) const noexcept { return get_vec3(vel_, check(i)); }
  Vec3 force(int i) const noexcept { return get_vec3(force_, check(i)); }
  void set_position(int i, const Vec3& p) noexcept { set_vec3(pos_, check(i), p); }
  void set_velocity(int i, const Vec3& v) noexcept { set_vec3(vel_, check(i), v); }
  void set_force(int i, const Vec3& f) noexcept { set_vec3(force_, check(i), f); }
  void add_force(int i, const Vec3& f) noexcept { add_vec3(force_, check(i), f); }

  const RealArray<L>& positions() const noexcept { return pos_; }
  const RealArray<L>& velocities() const noexcept { return vel_; }
  const RealArray<L>& forces() const noexcept { return force_; }

  const GhostSource& ghost_source(int g) const { return ghost_src_.at(g); }

  void reserve(int n) {
    if (n > capacity_) grow_to(std::max(n, 2 * capacity_));
  }

  /// Appends a local particle. With ghosts present, the first ghost moves to
  /// the end of the ghost region (ghost order is not preserved).
  int append_local(const Vec3& p, const Vec3& v) {
    reserve(size() + 1);
    if (n_ghost_ > 0) {
      copy_row(n_local_, size());
      std::rotate(ghost_src_.begin(), ghost_src_.begin() + 1, ghost_src_.end());
    }
    const int i = n_local_++;
    set_row(i, p, v, Vec3{});
    return i;
  }

  /// Swap-with-last removal: the last local takes index i and the last ghost
  /// fills the freed slot, so locals and ghosts both stay contiguous.
  void remove_local(int i) {
    assert(i >= 0 && i < n_local_);
    const int last = n_local_ - 1;
    if (i != last) copy_row(last, i);
    if (n_ghost_ > 0) {
      copy_row(size() - 1, last);
      std::rotate(ghost_src_.begin(), ghost_src_.end() - 1, ghost_src_.end());
    }
    --n_local_;
  }

  /// Resizes the ghost region; new ghosts are zero with an unknown source.
  void resize_ghost_region(int count) {
    assert(count >= 0);
    reserve(n_local_ + count);
    for (int g = n_ghost_; g < count; ++g) set_row(n_local_ + g, Vec3{}, Vec3{}, Vec3{});
    ghost_src_.resize(count);
    n_ghost_ = count;
  }

  int append_ghost(const Vec3& p, const Vec3& v, GhostSource src) {
    reserve(size() + 1);
    const int i = size();
    set_row(i, p, v, Vec3{});
    ghost_src_.push_back(src);
    ++n_ghost_;
    return i;
  }

  void clear_ghosts() noexcept {
    n_ghost_ = 0;
    ghost_src_.clear();
  }

  void zero_forces() noexcept {
    for (int i = 0; i < size(); ++i) set_vec3(force_, i, Vec3{});
  }

 private:
  std::size_t check(int i) const noexcept {
    assert(i >= 0 && i < capacity_);
    return static_cast<std::size_t>(i);
  }

  void grow_to(int n) {
    pos_.resize_x(n);
    vel_.resize_x(n);
    force_.resize_x(n);
    capacity_ = n;
  }

  void set_row(int i, const Vec3& p, const Vec3& v, const Vec3& f) {
    set_vec3(pos_, i, p);
    set_vec3(vel_, i, v);
    set_vec3(force_, i, f);
  }

  void copy_row(int from, int to) {
    set_row(to, get_vec3(pos_, from), get_vec3(vel_, from), get_vec3(force_, from));
  }

  RealArray<L> pos_{0, 3};
  RealArray<L> vel_{0, 3};
  RealArray<L> force_{0, 3};
  std::vector<GhostSource> ghost_src_;
  int n_local_ = 0;
  int n_ghost_ = 0;
  int capacity_ = 0;
};

/// Bound accessors over one store; what force and integration kernels capture.
template <ArrayLayout L>
class ParticleAccessor {
 public:
  explicit ParticleAccessor(ParticleStore<L>& store) : store_(&store) {}

  Vec3 get_position(int i) const noexcept { return store_->position(i); }
  void set_position(int i, const Vec3& p) const noexcept { store_->set_position(i, p); }
  Vec3 get_velocity(int i) const noexcept { return store_->velocity(i); }
  void set_velocity(int i, const Vec3& v) const noexcept { store_->set_velocity(i, v); }
  Vec3 get_force(int i) const noexcept { return store_->force(i); }
  void set_force(int i, const Vec3& f) const noexcept { store_->set_force(i, f); }
  void add_force(int i, const Vec3& f) const noexcept { store_->add_force(i, f); }

 private:
  ParticleStore<L>* store_;
};

template <ArrayLayout L>
ParticleAccessor<L> make_particle(ParticleStore<L>& store) {
  return ParticleAccessor<L>(store);
}

}  // namespace nanopair
