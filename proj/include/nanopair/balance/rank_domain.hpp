#pragma once

#include "nanopair/balance/forest.hpp"
#include "nanopair/comm/pattern.hpp"
#include "nanopair/exec/backend.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

/// Tight bounds of the local particles; empty for an empty store.
template <typename Backend, ArrayLayout L>
AABB particle_bounds(const Backend& backend, const ParticleStore<L>& store) {
  return backend.reduce(
      store.n_local(), AABB::empty(), [](const AABB& a, const AABB& b) { return aabb_union(a, b); },
      [&](int i) { return AABB{store.position(i), store.position(i)}; });
}

/// Cell-grid region of a block domain: the intersection of the block union
/// with the particle bounds, grown by `spacing`. Falls back to the union (or
/// a degenerate box at the global origin) when either is empty.
AABB crop_grid_region(const AABB& union_aabb, const AABB& particles, double spacing, const AABB& global);

/// Ownership of rank `me` after partitioning `forest`.
RankDomain rebuild_rank_domain(const BlockForest& forest, int me, double spacing);

}  // namespace nanopair
