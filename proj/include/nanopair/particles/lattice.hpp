#pragma once

#include <algorithm>
#include <vector>

#include "nanopair/core/config.hpp"
#include "nanopair/particles/store.hpp"

namespace nanopair {

struct ParticleRecord {
  Vec3 position;
  Vec3 velocity;

  friend bool operator==(const ParticleRecord&, const ParticleRecord&) = default;
  friend auto operator<=>(const ParticleRecord&, const ParticleRecord&) = default;
};

/// All lattice particles of the global system in a fixed generation order.
/// Velocities are seeded uniform draws shifted to zero net momentum over the
/// particles kept by `cfg.fill`, so every rank derives the same global state.
std::vector<ParticleRecord> lattice_records(const SimConfig& cfg);

/// Lattice particles whose positions fall inside `domain` (half-open).
template <ArrayLayout L>
ParticleStore<L> create_lattice(const SimConfig& cfg, const AABB& domain) {
  const auto records = lattice_records(cfg);
  ParticleStore<L> store(static_cast<int>(records.size()));
  for (const auto& r : records)
    if (domain.contains(r.position)) store.append_local(r.position, r.velocity);
  store.zero_forces();
  return store;
}

/// Locals of a store as records, sorted lexicographically by (position, velocity).
template <ArrayLayout L>
std::vector<ParticleRecord> sorted_locals(const ParticleStore<L>& store) {
  std::vector<ParticleRecord> out;
  out.reserve(store.n_local());
  for (int i = 0; i < store.n_local(); ++i) out.push_back({store.position(i), store.velocity(i)});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nanopair
